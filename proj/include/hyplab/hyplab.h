/* hyplab: star-shaped hypersurfaces in hyperbolic space, inverse mean
 * curvature and Brendle flows, curvature-integral inequalities, and
 * asymptotically hyperbolic mass / Penrose checks.
 *
 * C API over opaque handles.  Every fallible call returns hyplab_status;
 * hyplab_last_error() describes the most recent failure on this thread.
 */
#ifndef HYPLAB_H
#define HYPLAB_H

#if defined(_WIN32) || defined(__CYGWIN__)
#define HYPLAB_API __declspec(dllexport)
#elif defined(__GNUC__)
#define HYPLAB_API __attribute__((visibility("default")))
#else
#define HYPLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  HYPLAB_OK = 0,
  HYPLAB_ERR_INVALID_ARGUMENT = 1,
  HYPLAB_ERR_GEOMETRY = 2,
  HYPLAB_ERR_FLOW = 3,
  HYPLAB_ERR_IO = 4,
  HYPLAB_ERR_INTERNAL = 5
} hyplab_status;

HYPLAB_API const char* hyplab_version(void);
HYPLAB_API const char* hyplab_status_name(hyplab_status s);
/* Message for the last failing call on the calling thread. */
HYPLAB_API const char* hyplab_last_error(void);

/* ---- grids and graphs -------------------------------------------------- */

typedef struct hyplab_grid hyplab_grid;
typedef struct hyplab_graph hyplab_graph;

/* Cell-centered polar-angle grid on S^{n-1}; n >= 3, m >= 16. */
HYPLAB_API hyplab_status hyplab_grid_create(int n, int m, hyplab_grid** out);
HYPLAB_API void hyplab_grid_destroy(hyplab_grid* g);
HYPLAB_API int hyplab_grid_dimension(const hyplab_grid* g);
HYPLAB_API int hyplab_grid_node_count(const hyplab_grid* g);
HYPLAB_API hyplab_status hyplab_grid_nodes(const hyplab_grid* g, double* phi_out);

/* Area of the unit k-sphere; k >= 1. */
HYPLAB_API hyplab_status hyplab_unit_sphere_area(int k, double* out);

/* Radial graphs u(phi) > 0 over the grid. */
HYPLAB_API hyplab_status hyplab_graph_sphere(const hyplab_grid* g, double r,
                                             hyplab_graph** out);
/* Geodesic sphere of radius R centered at distance d along the axis; 0 <= d < R. */
HYPLAB_API hyplab_status hyplab_graph_offcenter_sphere(const hyplab_grid* g, double d,
                                                       double R, hyplab_graph** out);
/* u = r + eps P_l(cos phi); rejected unless strictly mean convex. */
HYPLAB_API hyplab_status hyplab_graph_perturbed_sphere(const hyplab_grid* g, double r,
                                                       double eps, int l,
                                                       hyplab_graph** out);
HYPLAB_API hyplab_status hyplab_graph_from_values(const hyplab_grid* g, const double* u,
                                                  hyplab_graph** out);
HYPLAB_API hyplab_status hyplab_graph_values(const hyplab_graph* gr, double* u_out);
HYPLAB_API hyplab_status hyplab_graph_min_mean_curvature(const hyplab_graph* gr,
                                                         double* out);
HYPLAB_API void hyplab_graph_destroy(hyplab_graph* gr);

/* ---- functionals -------------------------------------------------------- */

typedef struct {
  double area;              /* A */
  double area_ratio;        /* A / omega_{n-1} */
  double curvature_integral;/* int rho H dSigma */
  double support_integral;  /* -int p dSigma */
  double area_power;        /* omega_{n-1} (A/omega)^{n/(n-1)} */
  double l_value;           /* normalized curvature deficit, >= (n-1) omega */
  double m_value;           /* normalized support deficit,   >= (n-1) omega */
  double hk_deficit;        /* (n-1) int rho/H + int p; NaN when invalid */
  int hk_valid;
  double mink1_residual;
  double mink2_residual;
  double af_lhs;
  double af_rhs;
  double min_h;
  double max_h;
} hyplab_functional_report;

HYPLAB_API hyplab_status hyplab_evaluate(const hyplab_graph* gr,
                                         hyplab_functional_report* out);
HYPLAB_API double hyplab_af_margin(const hyplab_functional_report* r);
HYPLAB_API double hyplab_bhw_margin(const hyplab_functional_report* r, int n);

/* ---- flows --------------------------------------------------------------- */

typedef enum { HYPLAB_FLOW_IMCF = 0, HYPLAB_FLOW_BRENDLE = 1 } hyplab_flow_kind;

typedef struct {
  int kind;              /* hyplab_flow_kind */
  double t_end;
  double cfl;            /* in (0, 1/2], default 0.2 */
  double record_every;   /* row sampling interval */
  double tol_monotone;   /* per-step audit slack factor, default 1e-8 */
} hyplab_flow_spec;

HYPLAB_API void hyplab_flow_spec_init(hyplab_flow_spec* spec, int kind, double t_end);

typedef struct hyplab_trace hyplab_trace;

typedef struct {
  double t;
  hyplab_functional_report report;
  double max_umbilic_dev;  /* max |kappa - 1| */
  double sup_dv;           /* sup |v'| */
  double f_drift;          /* sup change of u - t/(n-1) since the last row */
} hyplab_trace_row;

/* One RK4 step; dt = 0 is the identity. */
HYPLAB_API hyplab_status hyplab_step(const hyplab_graph* gr, int kind, double dt,
                                     hyplab_graph** out);
HYPLAB_API hyplab_status hyplab_flow_run(const hyplab_graph* gr,
                                         const hyplab_flow_spec* spec,
                                         hyplab_trace** out);
HYPLAB_API int hyplab_trace_row_count(const hyplab_trace* t);
HYPLAB_API hyplab_status hyplab_trace_get_row(const hyplab_trace* t, int i,
                                          hyplab_trace_row* out);
/* found = 0 when the quantity was not reached during the run. */
HYPLAB_API hyplab_status hyplab_trace_crossing_t0(const hyplab_trace* t, double* t0,
                                                  int* found);
HYPLAB_API hyplab_status hyplab_trace_extinction(const hyplab_trace* t, double* text,
                                                 int* found);
HYPLAB_API int hyplab_trace_aborted(const hyplab_trace* t);
HYPLAB_API hyplab_status hyplab_trace_final_graph(const hyplab_trace* t,
                                                  hyplab_graph** out);

typedef struct {
  double kappa_rate;  /* fitted slope of log max|kappa-1| vs t */
  double dv_rate;     /* fitted slope of log sup|v'| vs t; NaN when invalid */
  int dv_rate_valid;
  double f_drift;
  double l_margin;    /* L(t_end) - (n-1) omega_{n-1} */
} hyplab_asymptotics;

/* IMCF traces reaching t >= 6 only. */
HYPLAB_API hyplab_status hyplab_trace_asymptotics(const hyplab_trace* t,
                                                  hyplab_asymptotics* out);
HYPLAB_API hyplab_status hyplab_trace_write_csv(const hyplab_trace* t, const char* path);
/* JSON summary (fits, t0, extinction, final margins); caller frees with
 * hyplab_string_free. */
HYPLAB_API hyplab_status hyplab_trace_summary_json(const hyplab_trace* t, char** out);
HYPLAB_API void hyplab_string_free(char* s);
HYPLAB_API void hyplab_trace_destroy(hyplab_trace* t);

/* ---- asymptotically hyperbolic graphs and mass --------------------------- */

typedef struct hyplab_profile hyplab_profile;

/* Horizon radius of the mass-m solution: positive root of 1 + r^2 = 2 m r^{2-n}. */
HYPLAB_API hyplab_status hyplab_horizon_radius(double mass, int n, double* out);

HYPLAB_API hyplab_status hyplab_profile_adss(int n, double mass, double r_max,
                                             int node_count, hyplab_profile** out);
/* u = u_m + eps (r - r_h)^2 e^{-r}. */
HYPLAB_API hyplab_status hyplab_profile_adss_perturbed(int n, double mass, double eps,
                                                       double r_max, int node_count,
                                                       hyplab_profile** out);
/* Hyperbolic space itself (no horizon). */
HYPLAB_API hyplab_status hyplab_profile_hyperbolic(int n, double r_max, int node_count,
                                                   hyplab_profile** out);
HYPLAB_API int hyplab_profile_node_count(const hyplab_profile* p);
/* row = {r, u, du, phi, R, Theta} */
HYPLAB_API hyplab_status hyplab_profile_row(const hyplab_profile* p, int i,
                                            double row_out[6]);
HYPLAB_API hyplab_status hyplab_profile_write_csv(const hyplab_profile* p,
                                                  const char* path);

typedef struct {
  double bulk;
  double horizon;
  double total;
  double functional_limit;
  double penrose_rhs;
  double horizon_area;
  double margin_formula;
  double margin_functional;
  double min_mg;
  int mg_warning;     /* R < -n(n-1) somewhere */
  int decay_warning;  /* flux-integral samples did not settle */
  int equality;       /* |margin_formula| <= 1e-6 */
} hyplab_mass_report;

/* Requires a horizon (r_h > 0); combines both mass computations. */
HYPLAB_API hyplab_status hyplab_penrose_check(const hyplab_profile* p,
                                              hyplab_mass_report* out);
/* m(r) at the given geodesic radii (no extrapolation). */
HYPLAB_API hyplab_status hyplab_mass_functional_samples(const hyplab_profile* p,
                                                        const double* r, int count,
                                                        double* out);
HYPLAB_API void hyplab_profile_destroy(hyplab_profile* p);

typedef struct {
  double mass;
  double curvature_integral;       /* c_n int rho H over the horizon graph */
  double penrose_rhs;
  double margin_mass_vs_integral;
  double margin_integral_vs_rhs;
  double min_h;
  int mean_convex;
} hyplab_chain_report;

/* Chain mass >= c_n int rho H >= penrose_rhs for a horizon graph in H^n. */
HYPLAB_API hyplab_status hyplab_af_chain(const hyplab_graph* horizon_graph, double mass,
                                         hyplab_chain_report* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HYPLAB_H */
