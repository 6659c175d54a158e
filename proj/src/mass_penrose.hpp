#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "functionals.hpp"
#include "radial_graph.hpp"

namespace hyplab {

// Anti-de Sitter-Schwarzschild data in the radial coordinate r with
// g = dr^2 / V(r) + r^2 h,  V(r) = 1 + r^2 - 2 m r^{2-n},
// and minimal horizon at the unique positive root of V.
struct AdssModel {
  int n = 0;
  double mass = 0;
  double r_h = 0;  // satisfies 1 + r_h^2 = 2 m r_h^{2-n}
};

// Bisection on 2 m r^{2-n} - 1 - r^2 to 1e-13.
double horizon_radius(double mass, int n);

AdssModel make_adss(int n, double mass);

// Rotationally symmetric graph t = u(r) in H^{n+1} = H^n x R with ambient
// metric rho^2 dt^2 + g0, rho = sqrt(1+r^2).  The induced metric is
// phi(r) dr^2 + r^2 h with phi = 1/(1+r^2) + (1+r^2) u'^2; psi = 1/phi is
// the regular object at the horizon (psi(r_h) = 0 when u' diverges there).
struct GraphProfile {
  int n = 0;
  double horizon_r = 0;
  double r_max = 0;
  std::vector<double> r_nodes;  // refined toward the horizon (uniform in sqrt(r - r_h))
  std::vector<double> u;
  std::vector<double> du;   // +inf at the horizon node
  std::vector<double> phi;  // +inf at the horizon node
  std::vector<double> psi;  // 1/phi, analytic form
  std::vector<double> dpsi;
  // Analytic evaluators; valid for any radius beyond the horizon, including
  // past r_max (the mass functional samples far outside the stored grid).
  std::function<double(double)> du_eval;
  std::function<double(double)> psi_eval;
  std::function<double(double)> dpsi_eval;
};

// u' from (1+r^2) u'^2 = 1/V - 1/(1+r^2) (positive branch), u integrated
// from u(r_h) = 0 with the substitution r = r_h + s^2 that removes the
// square-root singularity.  Requires r_max > 2 r_h.
GraphProfile build_adss_profile(const AdssModel& model, double r_max, int node_count);

// Same construction with u = u_m + eps (r - r_h)^2 e^{-r}; keeps u' -> inf
// at the horizon and superexponential decay at infinity.
GraphProfile build_perturbed_profile(const AdssModel& model, double eps, double r_max,
                                     int node_count);

// Hyperbolic space itself (u = 0, no horizon); cell-centered nodes on (0, r_max].
GraphProfile build_hyperbolic_profile(int n, double r_max, int node_count);

// Scalar curvature of g = phi dr^2 + r^2 h:
// R = (n-1) [ (n-2)(1 - psi)/r^2 - psi'/r ];  R + n(n-1) = 0 for adSS.
std::vector<double> scalar_curvature_radial(const GraphProfile& p);

// Theta = <N, d/dt> = phi^{-1/2} = sqrt(psi); zero at the horizon.
std::vector<double> theta(const GraphProfile& p);

struct MassBreakdown {
  double bulk = 0;              // c_n int Theta (R + n(n-1)) dM
  double horizon = 0;           // c_n int_Gamma rho H = r_h^{n-2} (1 + r_h^2) / 2
  double total = 0;             // bulk + horizon
  double functional_limit = 0;  // extrapolated flux-integral mass
  double penrose_rhs = 0;
  double min_mg = 0;            // min of R + n(n-1) seen by the bulk quadrature
  bool mg_warning = false;      // R < -n(n-1) somewhere
  bool decay_warning = false;   // mass-functional samples fail to converge
};

// Bulk + horizon mass; Theta sqrt(phi) = 1, so the bulk quadrature reduces
// to the smooth integrand (R + n(n-1)) r^{n-1} after the s-substitution.
MassBreakdown mass_formula(const GraphProfile& p);

// Flux-integral mass m(r) = sinh^{n-2}(r) cosh^2(r) alpha(r) / 2 at geodesic
// radius r, alpha = cosh^4(r) u'(sinh r)^2, Richardson-extrapolated to
// r -> infinity assuming an exponential tail.  Samples must be evenly
// spaced; default {6, 8, 10, 12}.
double mass_functional(const GraphProfile& p, std::span<const double> r_samples,
                       bool* divergence_warning = nullptr);
std::vector<double> mass_functional_samples(const GraphProfile& p,
                                            std::span<const double> r_samples);
extern const std::vector<double> kDefaultMassSamples;

struct PenroseVerdict {
  MassBreakdown breakdown;
  double horizon_area = 0;
  double margin_formula = 0;     // mass_formula total - penrose_rhs
  double margin_functional = 0;  // mass_functional limit - penrose_rhs
  bool equality = false;         // |margin_formula| <= 1e-6
};

// Requires a horizon (r_h > 0).
PenroseVerdict penrose_check(const GraphProfile& p);

// Link-by-link chain mass >= c_n int rho H >= penrose_rhs for a horizon
// graph Gamma sitting in the slice P = H^n.
struct ChainReport {
  double mass = 0;
  double curvature_integral = 0;  // c_n int rho H over Gamma
  double penrose_rhs = 0;
  double margin_mass_vs_integral = 0;
  double margin_integral_vs_rhs = 0;
  double min_h = 0;
  bool mean_convex = false;
};

ChainReport af_to_penrose_chain(const RadialGraph& horizon_graph, double mass);

// CSV table r,u,du,phi,R,Theta, one row per node.
void write_profile_csv(std::ostream& os, const GraphProfile& p);

}  // namespace hyplab
