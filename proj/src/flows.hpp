#pragma once

#include <array>
#include <optional>
#include <string>

#include "functionals.hpp"
#include "radial_graph.hpp"

namespace hyplab {

// Raised when a flow step cannot be completed (loss of mean convexity,
// non-finite state); carries the flow time and first offending node.
struct FlowError : std::runtime_error {
  double t;
  int node;
  FlowError(const std::string& msg, double time, int node_index)
      : std::runtime_error(msg), t(time), node(node_index) {}
};

enum class FlowKind {
  Imcf,     // outward, speed 1/H; graph equation du/dt = 1/(H W)
  Brendle,  // inward, speed rho;  graph equation du/dt = -rho/W
};

struct FlowSpec {
  FlowKind kind = FlowKind::Imcf;
  double t_end = 1.0;
  double cfl = 0.2;           // in (0, 1/2]
  double record_every = 0.05;
  double tol_monotone = 1e-8; // per-step audit slack factor
};

struct TraceRow {
  double t = 0;
  FunctionalReport report;
  double max_umbilic_dev = 0;  // max over nodes of |kappa - 1|
  double sup_dv = 0;           // sup |v'|
  double f_drift = 0;          // sup change of u - t/(n-1) since the last row
};

struct FlowTrace {
  FlowKind kind = FlowKind::Imcf;
  std::vector<TraceRow> rows;
  std::optional<double> crossing_t0;   // first time J >= Kq
  std::optional<double> extinction_t;  // Brendle: estimated extinction time
  RadialGraph final_graph;
  bool aborted = false;          // audit kept failing after 20 halvings
  std::string abort_reason;
};

// Per-step monotonicity audit.  For IMCF the checks are
//   a) dlog A = dt            (area law)
//   b) (J-Kq)/Ac^{n/(n-1)} nondecreasing
//   c) L nonincreasing while J <= Kq on the step
//   d) dJ >= n/(n-1) J dt
//   e) hk_deficit >= -1e-7 A
// For the Brendle flow: hk_deficit nonincreasing, area nonincreasing.
// Slacks scale with tol*dt and the magnitude of each quantity, with small
// absolute floors against roundoff.
struct AuditCheck {
  const char* name = "";
  bool applicable = false;
  bool pass = true;
  double value = 0;  // measured residual, signed so that >= -bound passes
  double bound = 0;
};

struct AuditResult {
  std::array<AuditCheck, 5> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (c.applicable && !c.pass) return false;
    return true;
  }
};

AuditResult audit_step(const FunctionalReport& before, const FunctionalReport& after,
                       double dt, FlowKind kind, double tol = 1e-8);

// One classical RK4 step of the nodal graph equation.  dt = 0 is the
// identity.  IMCF requires min H > 0 at every stage.
RadialGraph step(const RadialGraph& graph, FlowKind kind, double dt);

// Advances with the adaptive parabolic step
//   IMCF:    dt = cfl h^2 min_i(H_i rho_dot_i^2)
//   Brendle: dt = cfl h^2 / max rho
// halving and retrying a step whose audit fails, recording a row every
// record_every.  Brendle runs stop once the area-element density drops
// below 1e-6 (extinction proxy) and report the kinematic extinction
// estimate t + mean(u).
FlowTrace run(const RadialGraph& graph, const FlowSpec& spec);

// Least-squares decay fits over the last half of an IMCF trace.
struct AsymptoticsSummary {
  double kappa_rate = 0;      // fitted slope of log max|kappa-1| vs t
  double dv_rate = 0;         // fitted slope of log sup|v'| vs t
  bool dv_rate_valid = false; // false when sup|v'| sits at roundoff (round spheres)
  double f_drift = 0;         // sup change of u - t/(n-1) over the last two rows
  double l_margin = 0;        // L(t_end) - (n-1) omega_{n-1}
};

// Requires an IMCF trace reaching t >= 6 with enough rows to fit.
AsymptoticsSummary asymptotics_report(const FlowTrace& trace);

void write_trace_csv(std::ostream& os, const FlowTrace& trace);
std::string trace_summary_json(const FlowTrace& trace);

}  // namespace hyplab
