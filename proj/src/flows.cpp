#include "flows.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace hyplab {

namespace {

constexpr double kExtinctionDensity = 1e-6;
constexpr int kMaxHalvings = 20;

Field flow_speed(const GeometryFields& f, FlowKind kind, double t) {
  const int m = f.grid->m;
  Field s(m);
  if (kind == FlowKind::Imcf) {
    for (int i = 0; i < m; ++i) {
      if (!(f.H[i] > 0.0))
        throw FlowError("imcf: mean curvature lost positivity", t, i);
      s[i] = 1.0 / (f.H[i] * f.W[i]);
    }
  } else {
    for (int i = 0; i < m; ++i) s[i] = -f.rho[i] / f.W[i];
  }
  return s;
}

Field speed_at(const RadialGraph& base, const Field& u, FlowKind kind, double t) {
  RadialGraph g{base.grid, u};
  return flow_speed(compute_fields(g), kind, t);
}

RadialGraph rk4(const RadialGraph& graph, FlowKind kind, double dt, double t) {
  const int m = graph.grid->m;
  const Field k1 = speed_at(graph, graph.u, kind, t);
  Field tmp(m);
  for (int i = 0; i < m; ++i) tmp[i] = graph.u[i] + 0.5 * dt * k1[i];
  const Field k2 = speed_at(graph, tmp, kind, t);
  for (int i = 0; i < m; ++i) tmp[i] = graph.u[i] + 0.5 * dt * k2[i];
  const Field k3 = speed_at(graph, tmp, kind, t);
  for (int i = 0; i < m; ++i) tmp[i] = graph.u[i] + dt * k3[i];
  const Field k4 = speed_at(graph, tmp, kind, t);
  RadialGraph out{graph.grid, Field(m)};
  for (int i = 0; i < m; ++i)
    out.u[i] = graph.u[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

double max_umbilic_deviation(const GeometryFields& f) {
  double dev = 0.0;
  for (int i = 0; i < f.grid->m; ++i) {
    dev = std::max(dev, std::abs(f.kappa_rad[i] - 1.0));
    dev = std::max(dev, std::abs(f.kappa_ang[i] - 1.0));
  }
  return dev;
}

double sup_abs(const Field& f) {
  double s = 0.0;
  for (double x : f) s = std::max(s, std::abs(x));
  return s;
}

// Slope of the least-squares line y = a + b t.
double lsq_slope(const std::vector<double>& t, const std::vector<double>& y) {
  const double n = static_cast<double>(t.size());
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sy += y[i];
    stt += t[i] * t[i];
    sty += t[i] * y[i];
  }
  return (n * sty - st * sy) / (n * stt - st * st);
}

}  // namespace

AuditResult audit_step(const FunctionalReport& before, const FunctionalReport& after,
                       double dt, FlowKind kind, double tol) {
  const double omega = unit_sphere_area(before.n - 1);
  const double n = before.n;
  const double floor_abs = 1e-13;
  AuditResult res;

  if (kind == FlowKind::Imcf) {
    // a) area law: dlog A = dt exactly in the continuum.  The slack factor
    //    absorbs the O(h^4) semi-discrete defect without masking O(dt) bugs.
    {
      AuditCheck& c = res.checks[0];
      c.name = "area_law";
      c.applicable = true;
      c.value = std::log(after.A) - std::log(before.A) - dt;
      c.bound = 100.0 * tol * std::abs(dt) + floor_abs;
      c.pass = std::abs(c.value) <= c.bound;
    }
    // b) (J-Kq)/Ac^{n/(n-1)} nondecreasing; natural scale is omega.
    {
      AuditCheck& c = res.checks[1];
      c.name = "jk_ratio_monotone";
      c.applicable = true;
      const double qb = (before.J - before.Kq) / std::pow(before.Ac, n / (n - 1.0));
      const double qa = (after.J - after.Kq) / std::pow(after.Ac, n / (n - 1.0));
      c.value = qa - qb;
      c.bound = tol * dt * omega + floor_abs * omega;
      c.pass = c.value >= -c.bound;
    }
    // c) L nonincreasing while J <= Kq on the step.
    {
      AuditCheck& c = res.checks[2];
      c.name = "l_monotone";
      const double tie = 1e-12 * omega;
      c.applicable = before.J <= before.Kq + tie && after.J <= after.Kq + tie;
      c.value = after.L - before.L;
      c.bound = tol * dt * (n - 1.0) * omega + floor_abs * omega;
      c.pass = !c.applicable || c.value <= c.bound;
    }
    // d) dJ >= n/(n-1) J dt; the exponential-growth remainder is positive,
    //    so the linearized bound is safe at any dt.
    {
      AuditCheck& c = res.checks[3];
      c.name = "j_growth";
      c.applicable = true;
      c.value = after.J - before.J - n / (n - 1.0) * before.J * dt;
      c.bound = tol * dt * before.J + floor_abs * before.J;
      c.pass = c.value >= -c.bound;
    }
    // e) Heintze-Karcher deficit stays nonnegative.
    {
      AuditCheck& c = res.checks[4];
      c.name = "hk_nonneg";
      c.applicable = after.hk_valid;
      c.value = after.hk_deficit;
      c.bound = 1e-7 * after.A;
      c.pass = !c.applicable || c.value >= -c.bound;
    }
  } else {
    // Brendle flow: (n-1) int rho/H + int p is nonincreasing, area shrinks.
    {
      AuditCheck& c = res.checks[0];
      c.name = "hk_monotone";
      c.applicable = before.hk_valid && after.hk_valid;
      c.value = after.hk_deficit - before.hk_deficit;
      const double scale = std::max(std::abs(before.hk_deficit), before.A);
      c.bound = tol * dt * scale + floor_abs * scale;
      c.pass = !c.applicable || c.value <= c.bound;
    }
    {
      AuditCheck& c = res.checks[1];
      c.name = "area_decrease";
      c.applicable = true;
      c.value = after.A - before.A;
      c.bound = floor_abs * before.A;
      c.pass = c.value <= c.bound;
    }
    res.checks[2] = {"unused", false, true, 0, 0};
    res.checks[3] = {"unused", false, true, 0, 0};
    res.checks[4] = {"unused", false, true, 0, 0};
  }
  return res;
}

RadialGraph step(const RadialGraph& graph, FlowKind kind, double dt) {
  if (dt == 0.0) return graph;
  return rk4(graph, kind, dt, 0.0);
}

FlowTrace run(const RadialGraph& graph, const FlowSpec& spec) {
  if (!(spec.t_end > 0.0)) throw std::invalid_argument("run: t_end must be positive");
  if (!(spec.cfl > 0.0 && spec.cfl <= 0.5))
    throw std::invalid_argument("run: cfl must lie in (0, 1/2]");
  if (!(spec.record_every > 0.0))
    throw std::invalid_argument("run: record_every must be positive");

  const SphereGrid& g = *graph.grid;
  const double h2 = g.h * g.h;
  const double inv_n1 = 1.0 / (g.n - 1.0);

  FlowTrace trace;
  trace.kind = spec.kind;

  RadialGraph cur = graph;
  GeometryFields fields = compute_fields(cur);
  if (spec.kind == FlowKind::Imcf && !(min_mean_curvature(fields) > 0.0))
    throw FlowError("run: initial hypersurface is not strictly mean convex", 0.0, -1);
  FunctionalReport report = evaluate(fields);

  double t = 0.0;
  Field last_profile(g.m);  // u - t/(n-1) at the previous recorded row
  auto record = [&](const GeometryFields& f, const FunctionalReport& rep) {
    TraceRow row;
    row.t = t;
    row.report = rep;
    row.max_umbilic_dev = max_umbilic_deviation(f);
    row.sup_dv = sup_abs(f.dv);
    Field profile(g.m);
    for (int i = 0; i < g.m; ++i) profile[i] = cur.u[i] - t * inv_n1;
    if (trace.rows.empty()) {
      row.f_drift = 0.0;
    } else {
      double drift = 0.0;
      for (int i = 0; i < g.m; ++i)
        drift = std::max(drift, std::abs(profile[i] - last_profile[i]));
      row.f_drift = drift;
    }
    last_profile = profile;
    trace.rows.push_back(row);
  };
  record(fields, report);

  const double tie = 1e-12 * report.Kq;
  if (report.J - report.Kq >= -tie) trace.crossing_t0 = 0.0;

  double next_record = spec.record_every;
  bool last_row_at_t = true;

  while (t < spec.t_end - 1e-14) {
    // Extinction proxy: the area-element density collapses.
    if (spec.kind == FlowKind::Brendle) {
      const double min_density = *std::min_element(fields.dSigma.begin(), fields.dSigma.end());
      if (min_density < kExtinctionDensity) {
        double mean_u = 0.0;
        for (double ui : cur.u) mean_u += ui;
        mean_u /= g.m;
        trace.extinction_t = t + mean_u;  // inward speed cosh(u) -> 1
        break;
      }
    }

    double dt_cfl;
    if (spec.kind == FlowKind::Imcf) {
      double mn = std::numeric_limits<double>::infinity();
      for (int i = 0; i < g.m; ++i)
        mn = std::min(mn, fields.H[i] * fields.rho_dot[i] * fields.rho_dot[i]);
      if (!(mn > 0.0)) throw FlowError("run: nonpositive CFL bound", t, -1);
      dt_cfl = spec.cfl * h2 * mn;
    } else {
      const double max_rho = *std::max_element(fields.rho.begin(), fields.rho.end());
      dt_cfl = spec.cfl * h2 / max_rho;
    }
    double dt = std::min({dt_cfl, spec.t_end - t, next_record - t});

    RadialGraph next;
    GeometryFields next_fields;
    FunctionalReport next_report;
    bool accepted = false;
    for (int halvings = 0; halvings <= kMaxHalvings; ++halvings) {
      try {
        next = rk4(cur, spec.kind, dt, t);
        next_fields = compute_fields(next);
        if (spec.kind == FlowKind::Imcf && !(min_mean_curvature(next_fields) > 0.0))
          throw FlowError("run: step lost strict mean convexity", t, -1);
        next_report = evaluate(next_fields);
        if (audit_step(report, next_report, dt, spec.kind, spec.tol_monotone).pass()) {
          accepted = true;
          break;
        }
      } catch (const GeometryError&) {
        // fall through and retry with a smaller step
      } catch (const FlowError&) {
      }
      dt *= 0.5;
    }
    if (!accepted) {
      trace.aborted = true;
      trace.abort_reason = "step audit failed after 20 halvings at t = " + format_double(t);
      break;
    }

    // First crossing of J >= Kq, located by linear interpolation.
    if (!trace.crossing_t0) {
      const double q0 = report.J - report.Kq;
      const double q1 = next_report.J - next_report.Kq;
      if (q1 >= 0.0) {
        const double frac = (q1 - q0) > 0.0 ? -q0 / (q1 - q0) : 1.0;
        trace.crossing_t0 = t + std::clamp(frac, 0.0, 1.0) * dt;
      }
    }

    t += dt;
    cur = std::move(next);
    fields = std::move(next_fields);
    report = next_report;
    last_row_at_t = false;

    if (t >= next_record - 1e-12 || t >= spec.t_end - 1e-14) {
      record(fields, report);
      last_row_at_t = true;
      while (next_record <= t + 1e-12) next_record += spec.record_every;
    }
  }

  if (!last_row_at_t) record(fields, report);
  trace.final_graph = cur;
  return trace;
}

AsymptoticsSummary asymptotics_report(const FlowTrace& trace) {
  if (trace.kind != FlowKind::Imcf)
    throw std::invalid_argument("asymptotics_report: IMCF trace required");
  if (trace.rows.size() < 8 || trace.rows.back().t < 6.0)
    throw std::invalid_argument("asymptotics_report: trace too short (need t_end >= 6)");

  const double t0 = trace.rows.front().t, t1 = trace.rows.back().t;
  const double t_mid = 0.5 * (t0 + t1);
  std::vector<double> ts, log_kappa, ts_dv, log_dv;
  for (const TraceRow& row : trace.rows) {
    if (row.t < t_mid) continue;
    if (row.max_umbilic_dev > 1e-14) {
      ts.push_back(row.t);
      log_kappa.push_back(std::log(row.max_umbilic_dev));
    }
    if (row.sup_dv > 1e-14) {
      ts_dv.push_back(row.t);
      log_dv.push_back(std::log(row.sup_dv));
    }
  }
  if (ts.size() < 4)
    throw std::invalid_argument("asymptotics_report: not enough resolvable rows to fit");

  AsymptoticsSummary s;
  s.kappa_rate = lsq_slope(ts, log_kappa);
  s.dv_rate_valid = ts_dv.size() >= 4;
  s.dv_rate = s.dv_rate_valid ? lsq_slope(ts_dv, log_dv)
                              : std::numeric_limits<double>::quiet_NaN();
  s.f_drift = trace.rows.back().f_drift;
  const FunctionalReport& last = trace.rows.back().report;
  s.l_margin = last.L - (last.n - 1.0) * unit_sphere_area(last.n - 1);
  return s;
}

void write_trace_csv(std::ostream& os, const FlowTrace& trace) {
  write_report_csv_header(os);
  for (const TraceRow& row : trace.rows) write_report_csv_row(os, row.t, row.report);
}

std::string trace_summary_json(const FlowTrace& trace) {
  nlohmann::json j;
  j["kind"] = trace.kind == FlowKind::Imcf ? "imcf" : "brendle";
  j["rows"] = trace.rows.size();
  j["t_final"] = trace.rows.empty() ? 0.0 : trace.rows.back().t;
  j["aborted"] = trace.aborted;
  if (trace.aborted) j["abort_reason"] = trace.abort_reason;
  if (trace.crossing_t0) j["crossing_t0"] = *trace.crossing_t0;
  if (trace.extinction_t) j["extinction_t"] = *trace.extinction_t;
  if (!trace.rows.empty()) {
    const TraceRow& last = trace.rows.back();
    j["final"]["L"] = last.report.L;
    j["final"]["M"] = last.report.M;
    j["final"]["af_margin"] = af_margin(last.report);
    j["final"]["bhw_margin"] = bhw_margin(last.report);
    j["final"]["hk_deficit"] = last.report.hk_deficit;
    j["final"]["max_umbilic_dev"] = last.max_umbilic_dev;
    j["final"]["sup_dv"] = last.sup_dv;
    j["final"]["f_drift"] = last.f_drift;
  }
  nlohmann::json diag = nlohmann::json::array();
  for (const TraceRow& row : trace.rows)
    diag.push_back({{"t", row.t},
                    {"max_umbilic_dev", row.max_umbilic_dev},
                    {"sup_dv", row.sup_dv},
                    {"f_drift", row.f_drift}});
  j["diagnostics"] = diag;
  if (trace.kind == FlowKind::Imcf && !trace.rows.empty() && trace.rows.back().t >= 6.0) {
    try {
      const AsymptoticsSummary s = asymptotics_report(trace);
      j["asymptotics"] = {{"kappa_rate", s.kappa_rate},
                          {"dv_rate", s.dv_rate_valid ? nlohmann::json(s.dv_rate)
                                                      : nlohmann::json()},
                          {"f_drift", s.f_drift},
                          {"l_margin", s.l_margin}};
    } catch (const std::invalid_argument&) {
      // too few rows to fit; leave the summary without fits
    }
  }
  return j.dump(2);
}

}  // namespace hyplab
