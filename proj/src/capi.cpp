#include "hyplab/hyplab.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "flows.hpp"
#include "functionals.hpp"
#include "mass_penrose.hpp"
#include "radial_graph.hpp"
#include "reference_shapes.hpp"
#include "sphere_grid.hpp"

using namespace hyplab;

struct hyplab_grid {
  std::shared_ptr<const SphereGrid> g;
};
struct hyplab_graph {
  RadialGraph g;
};
struct hyplab_trace {
  FlowTrace t;
};
struct hyplab_profile {
  GraphProfile p;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <class F>
hyplab_status guarded(F&& fn) noexcept {
  try {
    fn();
    return HYPLAB_OK;
  } catch (const GeometryError& e) {
    set_error(e.what());
    return HYPLAB_ERR_GEOMETRY;
  } catch (const FlowError& e) {
    set_error(e.what());
    return HYPLAB_ERR_FLOW;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return HYPLAB_ERR_INVALID_ARGUMENT;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return HYPLAB_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return HYPLAB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return HYPLAB_ERR_INTERNAL;
  }
}

hyplab_status require(bool cond, const char* msg) {
  if (cond) return HYPLAB_OK;
  set_error(msg);
  return HYPLAB_ERR_INVALID_ARGUMENT;
}

hyplab_functional_report to_c(const FunctionalReport& r) {
  hyplab_functional_report out;
  out.area = r.A;
  out.area_ratio = r.Ac;
  out.curvature_integral = r.I;
  out.support_integral = r.J;
  out.area_power = r.Kq;
  out.l_value = r.L;
  out.m_value = r.M;
  out.hk_deficit = r.hk_deficit;
  out.hk_valid = r.hk_valid ? 1 : 0;
  out.mink1_residual = r.mink1_residual;
  out.mink2_residual = r.mink2_residual;
  out.af_lhs = r.af_lhs;
  out.af_rhs = r.af_rhs;
  out.min_h = r.min_h;
  out.max_h = r.max_h;
  return out;
}

hyplab_status write_file(const char* path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    set_error(std::string("cannot open for writing: ") + path);
    return HYPLAB_ERR_IO;
  }
  os << content;
  os.flush();
  if (!os) {
    set_error(std::string("write failed: ") + path);
    return HYPLAB_ERR_IO;
  }
  return HYPLAB_OK;
}

}  // namespace

extern "C" {

const char* hyplab_version(void) { return "0.1.0"; }

const char* hyplab_status_name(hyplab_status s) {
  switch (s) {
    case HYPLAB_OK: return "ok";
    case HYPLAB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case HYPLAB_ERR_GEOMETRY: return "geometry error";
    case HYPLAB_ERR_FLOW: return "flow error";
    case HYPLAB_ERR_IO: return "io error";
    case HYPLAB_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* hyplab_last_error(void) { return g_last_error.c_str(); }

hyplab_status hyplab_grid_create(int n, int m, hyplab_grid** out) {
  if (auto s = require(out != nullptr, "grid_create: null output")) return s;
  return guarded([&] {
    auto grid = std::make_shared<SphereGrid>(make_grid(n, m));
    *out = new hyplab_grid{std::move(grid)};
  });
}

void hyplab_grid_destroy(hyplab_grid* g) { delete g; }

int hyplab_grid_dimension(const hyplab_grid* g) { return g ? g->g->n : 0; }
int hyplab_grid_node_count(const hyplab_grid* g) { return g ? g->g->m : 0; }

hyplab_status hyplab_grid_nodes(const hyplab_grid* g, double* phi_out) {
  if (auto s = require(g && phi_out, "grid_nodes: null argument")) return s;
  std::memcpy(phi_out, g->g->phi.data(), g->g->phi.size() * sizeof(double));
  return HYPLAB_OK;
}

hyplab_status hyplab_unit_sphere_area(int k, double* out) {
  if (auto s = require(out != nullptr, "unit_sphere_area: null output")) return s;
  return guarded([&] { *out = unit_sphere_area(k); });
}

hyplab_status hyplab_graph_sphere(const hyplab_grid* g, double r, hyplab_graph** out) {
  if (auto s = require(g && out, "graph_sphere: null argument")) return s;
  return guarded([&] {
    ShapeSpec spec;
    spec.variant = ShapeSpec::Variant::CenteredSphere;
    spec.r = r;
    *out = new hyplab_graph{build(spec, g->g)};
  });
}

hyplab_status hyplab_graph_offcenter_sphere(const hyplab_grid* g, double d, double R,
                                            hyplab_graph** out) {
  if (auto s = require(g && out, "graph_offcenter_sphere: null argument")) return s;
  return guarded([&] {
    ShapeSpec spec;
    spec.variant = ShapeSpec::Variant::OffcenterSphere;
    spec.d = d;
    spec.R = R;
    *out = new hyplab_graph{build(spec, g->g)};
  });
}

hyplab_status hyplab_graph_perturbed_sphere(const hyplab_grid* g, double r, double eps,
                                            int l, hyplab_graph** out) {
  if (auto s = require(g && out, "graph_perturbed_sphere: null argument")) return s;
  return guarded([&] {
    ShapeSpec spec;
    spec.variant = ShapeSpec::Variant::PerturbedSphere;
    spec.r = r;
    spec.eps = eps;
    spec.l = l;
    *out = new hyplab_graph{build(spec, g->g)};
  });
}

hyplab_status hyplab_graph_from_values(const hyplab_grid* g, const double* u,
                                       hyplab_graph** out) {
  if (auto s = require(g && u && out, "graph_from_values: null argument")) return s;
  return guarded([&] {
    RadialGraph graph{g->g, Field(u, u + g->g->m)};
    compute_fields(graph);  // validates positivity and finiteness
    *out = new hyplab_graph{std::move(graph)};
  });
}

hyplab_status hyplab_graph_values(const hyplab_graph* gr, double* u_out) {
  if (auto s = require(gr && u_out, "graph_values: null argument")) return s;
  std::memcpy(u_out, gr->g.u.data(), gr->g.u.size() * sizeof(double));
  return HYPLAB_OK;
}

hyplab_status hyplab_graph_min_mean_curvature(const hyplab_graph* gr, double* out) {
  if (auto s = require(gr && out, "graph_min_mean_curvature: null argument")) return s;
  return guarded([&] { *out = min_mean_curvature(compute_fields(gr->g)); });
}

void hyplab_graph_destroy(hyplab_graph* gr) { delete gr; }

hyplab_status hyplab_evaluate(const hyplab_graph* gr, hyplab_functional_report* out) {
  if (auto s = require(gr && out, "evaluate: null argument")) return s;
  return guarded([&] { *out = to_c(evaluate(compute_fields(gr->g))); });
}

double hyplab_af_margin(const hyplab_functional_report* r) {
  return r ? r->af_lhs - r->af_rhs : 0.0;
}

double hyplab_bhw_margin(const hyplab_functional_report* r, int n) {
  return r ? r->m_value - (n - 1.0) * unit_sphere_area(n - 1) : 0.0;
}

void hyplab_flow_spec_init(hyplab_flow_spec* spec, int kind, double t_end) {
  if (!spec) return;
  spec->kind = kind;
  spec->t_end = t_end;
  spec->cfl = 0.2;
  spec->record_every = 0.05;
  spec->tol_monotone = 1e-8;
}

hyplab_status hyplab_step(const hyplab_graph* gr, int kind, double dt,
                          hyplab_graph** out) {
  if (auto s = require(gr && out, "step: null argument")) return s;
  if (auto s = require(kind == HYPLAB_FLOW_IMCF || kind == HYPLAB_FLOW_BRENDLE,
                       "step: unknown flow kind"))
    return s;
  return guarded([&] {
    *out = new hyplab_graph{
        step(gr->g, kind == HYPLAB_FLOW_IMCF ? FlowKind::Imcf : FlowKind::Brendle, dt)};
  });
}

hyplab_status hyplab_flow_run(const hyplab_graph* gr, const hyplab_flow_spec* spec,
                              hyplab_trace** out) {
  if (auto s = require(gr && spec && out, "flow_run: null argument")) return s;
  if (auto s = require(spec->kind == HYPLAB_FLOW_IMCF || spec->kind == HYPLAB_FLOW_BRENDLE,
                       "flow_run: unknown flow kind"))
    return s;
  return guarded([&] {
    FlowSpec fs;
    fs.kind = spec->kind == HYPLAB_FLOW_IMCF ? FlowKind::Imcf : FlowKind::Brendle;
    fs.t_end = spec->t_end;
    fs.cfl = spec->cfl;
    fs.record_every = spec->record_every;
    fs.tol_monotone = spec->tol_monotone;
    *out = new hyplab_trace{run(gr->g, fs)};
  });
}

int hyplab_trace_row_count(const hyplab_trace* t) {
  return t ? static_cast<int>(t->t.rows.size()) : 0;
}

hyplab_status hyplab_trace_get_row(const hyplab_trace* t, int i, hyplab_trace_row* out) {
  if (auto s = require(t && out, "trace_get_row: null argument")) return s;
  if (auto s = require(i >= 0 && i < static_cast<int>(t->t.rows.size()),
                       "trace_get_row: index out of range"))
    return s;
  const TraceRow& row = t->t.rows[i];
  out->t = row.t;
  out->report = to_c(row.report);
  out->max_umbilic_dev = row.max_umbilic_dev;
  out->sup_dv = row.sup_dv;
  out->f_drift = row.f_drift;
  return HYPLAB_OK;
}

hyplab_status hyplab_trace_crossing_t0(const hyplab_trace* t, double* t0, int* found) {
  if (auto s = require(t && t0 && found, "trace_crossing_t0: null argument")) return s;
  *found = t->t.crossing_t0.has_value() ? 1 : 0;
  *t0 = t->t.crossing_t0.value_or(0.0);
  return HYPLAB_OK;
}

hyplab_status hyplab_trace_extinction(const hyplab_trace* t, double* text, int* found) {
  if (auto s = require(t && text && found, "trace_extinction: null argument")) return s;
  *found = t->t.extinction_t.has_value() ? 1 : 0;
  *text = t->t.extinction_t.value_or(0.0);
  return HYPLAB_OK;
}

int hyplab_trace_aborted(const hyplab_trace* t) { return t && t->t.aborted ? 1 : 0; }

hyplab_status hyplab_trace_final_graph(const hyplab_trace* t, hyplab_graph** out) {
  if (auto s = require(t && out, "trace_final_graph: null argument")) return s;
  return guarded([&] { *out = new hyplab_graph{t->t.final_graph}; });
}

hyplab_status hyplab_trace_asymptotics(const hyplab_trace* t, hyplab_asymptotics* out) {
  if (auto s = require(t && out, "trace_asymptotics: null argument")) return s;
  return guarded([&] {
    const AsymptoticsSummary a = asymptotics_report(t->t);
    out->kappa_rate = a.kappa_rate;
    out->dv_rate = a.dv_rate;
    out->dv_rate_valid = a.dv_rate_valid ? 1 : 0;
    out->f_drift = a.f_drift;
    out->l_margin = a.l_margin;
  });
}

hyplab_status hyplab_trace_write_csv(const hyplab_trace* t, const char* path) {
  if (auto s = require(t && path, "trace_write_csv: null argument")) return s;
  std::ostringstream os;
  write_trace_csv(os, t->t);
  return write_file(path, os.str());
}

hyplab_status hyplab_trace_summary_json(const hyplab_trace* t, char** out) {
  if (auto s = require(t && out, "trace_summary_json: null argument")) return s;
  return guarded([&] {
    const std::string j = trace_summary_json(t->t);
    char* buf = new char[j.size() + 1];
    std::memcpy(buf, j.c_str(), j.size() + 1);
    *out = buf;
  });
}

void hyplab_string_free(char* s) { delete[] s; }

void hyplab_trace_destroy(hyplab_trace* t) { delete t; }

hyplab_status hyplab_horizon_radius(double mass, int n, double* out) {
  if (auto s = require(out != nullptr, "horizon_radius: null output")) return s;
  return guarded([&] { *out = horizon_radius(mass, n); });
}

hyplab_status hyplab_profile_adss(int n, double mass, double r_max, int node_count,
                                  hyplab_profile** out) {
  if (auto s = require(out != nullptr, "profile_adss: null output")) return s;
  return guarded([&] {
    *out = new hyplab_profile{build_adss_profile(make_adss(n, mass), r_max, node_count)};
  });
}

hyplab_status hyplab_profile_adss_perturbed(int n, double mass, double eps, double r_max,
                                            int node_count, hyplab_profile** out) {
  if (auto s = require(out != nullptr, "profile_adss_perturbed: null output")) return s;
  return guarded([&] {
    *out = new hyplab_profile{
        build_perturbed_profile(make_adss(n, mass), eps, r_max, node_count)};
  });
}

hyplab_status hyplab_profile_hyperbolic(int n, double r_max, int node_count,
                                        hyplab_profile** out) {
  if (auto s = require(out != nullptr, "profile_hyperbolic: null output")) return s;
  return guarded(
      [&] { *out = new hyplab_profile{build_hyperbolic_profile(n, r_max, node_count)}; });
}

int hyplab_profile_node_count(const hyplab_profile* p) {
  return p ? static_cast<int>(p->p.r_nodes.size()) : 0;
}

hyplab_status hyplab_profile_row(const hyplab_profile* p, int i, double row_out[6]) {
  if (auto s = require(p && row_out, "profile_row: null argument")) return s;
  if (auto s = require(i >= 0 && i < static_cast<int>(p->p.r_nodes.size()),
                       "profile_row: index out of range"))
    return s;
  return guarded([&] {
    const double r = p->p.r_nodes[i];
    const double n = p->p.n;
    const double R =
        (n - 1.0) * ((n - 2.0) * (1.0 - p->p.psi[i]) / (r * r) - p->p.dpsi[i] / r);
    row_out[0] = r;
    row_out[1] = p->p.u[i];
    row_out[2] = p->p.du[i];
    row_out[3] = p->p.phi[i];
    row_out[4] = R;
    row_out[5] = std::sqrt(p->p.psi[i]);
  });
}

hyplab_status hyplab_profile_write_csv(const hyplab_profile* p, const char* path) {
  if (auto s = require(p && path, "profile_write_csv: null argument")) return s;
  std::ostringstream os;
  write_profile_csv(os, p->p);
  return write_file(path, os.str());
}

hyplab_status hyplab_penrose_check(const hyplab_profile* p, hyplab_mass_report* out) {
  if (auto s = require(p && out, "penrose_check: null argument")) return s;
  return guarded([&] {
    const PenroseVerdict v = penrose_check(p->p);
    out->bulk = v.breakdown.bulk;
    out->horizon = v.breakdown.horizon;
    out->total = v.breakdown.total;
    out->functional_limit = v.breakdown.functional_limit;
    out->penrose_rhs = v.breakdown.penrose_rhs;
    out->horizon_area = v.horizon_area;
    out->margin_formula = v.margin_formula;
    out->margin_functional = v.margin_functional;
    out->min_mg = v.breakdown.min_mg;
    out->mg_warning = v.breakdown.mg_warning ? 1 : 0;
    out->decay_warning = v.breakdown.decay_warning ? 1 : 0;
    out->equality = v.equality ? 1 : 0;
  });
}

hyplab_status hyplab_mass_functional_samples(const hyplab_profile* p, const double* r,
                                             int count, double* out) {
  if (auto s = require(p && r && out && count > 0, "mass_functional_samples: bad argument"))
    return s;
  return guarded([&] {
    const std::vector<double> vals =
        mass_functional_samples(p->p, std::span<const double>(r, r + count));
    std::memcpy(out, vals.data(), vals.size() * sizeof(double));
  });
}

void hyplab_profile_destroy(hyplab_profile* p) { delete p; }

hyplab_status hyplab_af_chain(const hyplab_graph* horizon_graph, double mass,
                              hyplab_chain_report* out) {
  if (auto s = require(horizon_graph && out, "af_chain: null argument")) return s;
  return guarded([&] {
    const ChainReport c = af_to_penrose_chain(horizon_graph->g, mass);
    out->mass = c.mass;
    out->curvature_integral = c.curvature_integral;
    out->penrose_rhs = c.penrose_rhs;
    out->margin_mass_vs_integral = c.margin_mass_vs_integral;
    out->margin_integral_vs_rhs = c.margin_integral_vs_rhs;
    out->min_h = c.min_h;
    out->mean_convex = c.mean_convex ? 1 : 0;
  });
}

}  // extern "C"
