#include "mass_penrose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace hyplab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct GaussRule {
  std::vector<double> x, w;  // on [-1, 1]
};

// Gauss-Legendre nodes by Newton iteration on P_k.
GaussRule gauss_legendre(int k) {
  GaussRule r;
  r.x.resize(k);
  r.w.resize(k);
  for (int i = 0; i < k; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= k; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = k * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

const GaussRule& bulk_rule() {
  static const GaussRule r = gauss_legendre(12);
  return r;
}

// Closed forms shared by the adSS family and its eps-perturbation.
struct Family {
  int n;
  double m;
  double r_h;
  double eps;

  double V(double r) const { return 1.0 + r * r - 2.0 * m * std::pow(r, 2.0 - n); }
  double Vp(double r) const { return 2.0 * r + 2.0 * m * (n - 2.0) * std::pow(r, 1.0 - n); }
  double c2(double r) const { return 1.0 + r * r; }

  double um_prime(double r) const {
    const double v = V(r);
    if (v <= 0.0) return kInf;
    const double c = c2(r);
    return std::sqrt(2.0 * m * std::pow(r, 2.0 - n) / (v * c * c));
  }
  double um_second(double r) const {
    const double v = V(r);
    if (v <= 0.0) return -kInf;
    return 0.5 * um_prime(r) * ((2.0 - n) / r - Vp(r) / v - 4.0 * r / c2(r));
  }
  double q1(double r) const {  // d/dr of (r - r_h)^2 e^{-r}
    const double s = r - r_h;
    return std::exp(-r) * (2.0 * s - s * s);
  }
  double q2(double r) const {
    const double s = r - r_h;
    return std::exp(-r) * (s * s - 4.0 * s + 2.0);
  }
  double du(double r) const { return um_prime(r) + eps * q1(r); }

  // psi = 1/phi written without cancellation:
  // psi = V c^2 / [V + (c^2 - V)(1 + delta)^2], delta = eps q'/u_m'.
  // delta and delta' vanish at the horizon, so psi(r_h) = 0 and
  // psi'(r_h) = V'(r_h) for every eps.
  double psi(double r) const {
    const double v = V(r);
    if (v <= 0.0) return 0.0;
    const double c = c2(r);
    const double up = um_prime(r);
    const double delta = eps == 0.0 ? 0.0 : eps * q1(r) / up;
    const double one_d = (1.0 + delta) * (1.0 + delta);
    return v * c / (v + (c - v) * one_d);
  }
  double dpsi(double r) const {
    const double v = V(r);
    if (v <= 0.0) return Vp(r);  // limit value at the horizon
    const double c = c2(r);
    const double vp = Vp(r);
    double delta = 0.0, ddelta = 0.0;
    if (eps != 0.0) {
      const double up = um_prime(r);
      delta = eps * q1(r) / up;
      ddelta = eps * (q2(r) / up - q1(r) * um_second(r) / (up * up));
    }
    const double one_d = (1.0 + delta) * (1.0 + delta);
    const double D = v + (c - v) * one_d;
    const double Dp = vp + (2.0 * r - vp) * one_d + (c - v) * 2.0 * (1.0 + delta) * ddelta;
    const double Np = vp * c + 2.0 * r * v;
    return (Np * D - v * c * Dp) / (D * D);
  }
};

GraphProfile build_family_profile(const AdssModel& model, double eps, double r_max,
                                  int node_count) {
  if (!(r_max > 2.0 * model.r_h))
    throw std::invalid_argument("build profile: r_max must exceed 2 r_h");
  if (node_count < 16) throw std::invalid_argument("build profile: need at least 16 nodes");

  const auto fam = std::make_shared<Family>(Family{model.n, model.mass, model.r_h, eps});
  GraphProfile p;
  p.n = model.n;
  p.horizon_r = model.r_h;
  p.r_max = r_max;
  p.du_eval = [fam](double r) { return fam->du(r); };
  p.psi_eval = [fam](double r) { return fam->psi(r); };
  p.dpsi_eval = [fam](double r) { return fam->dpsi(r); };

  const int N = node_count;
  const double s_max = std::sqrt(r_max - model.r_h);
  p.r_nodes.resize(N);
  p.u.resize(N);
  p.du.resize(N);
  p.phi.resize(N);
  p.psi.resize(N);
  p.dpsi.resize(N);

  const GaussRule& gr = bulk_rule();
  double u_acc = 0.0;
  double s_prev = 0.0;
  for (int i = 0; i < N; ++i) {
    const double s = s_max * i / (N - 1.0);
    const double r = model.r_h + s * s;
    if (i > 0) {
      // u(s) = int u'(r_h + sigma^2) 2 sigma d sigma, smooth through sigma = 0.
      const double mid = 0.5 * (s_prev + s), half = 0.5 * (s - s_prev);
      double panel = 0.0;
      for (size_t k = 0; k < gr.x.size(); ++k) {
        const double sg = mid + half * gr.x[k];
        const double radicand_r = model.r_h + sg * sg;
        panel += gr.w[k] * fam->du(radicand_r) * 2.0 * sg;
      }
      u_acc += half * panel;
    }
    p.r_nodes[i] = r;
    p.u[i] = u_acc;
    p.du[i] = (i == 0) ? kInf : fam->du(r);
    p.psi[i] = fam->psi(r);
    p.dpsi[i] = fam->dpsi(r);
    if (i == 0) {
      p.phi[i] = kInf;
    } else {
      const double c = fam->c2(r);
      p.phi[i] = 1.0 / c + c * p.du[i] * p.du[i];
    }
    s_prev = s;
  }
  return p;
}

double radicand_check(double x, const char* what) {
  if (!(x >= 0.0)) throw std::runtime_error(std::string(what) + ": negative radicand");
  return x;
}

}  // namespace

double horizon_radius(double mass, int n) {
  if (!(mass > 0.0)) throw std::invalid_argument("horizon_radius: mass must be positive");
  if (n < 3) throw std::invalid_argument("horizon_radius: dimension must be >= 3");
  auto f = [&](double r) { return 2.0 * mass * std::pow(r, 2.0 - n) - 1.0 - r * r; };
  double lo = 1e-9, hi = std::max(1.0, 2.0 * mass);
  while (f(hi) > 0.0) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, lo); ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

AdssModel make_adss(int n, double mass) {
  AdssModel m;
  m.n = n;
  m.mass = mass;
  m.r_h = horizon_radius(mass, n);
  return m;
}

GraphProfile build_adss_profile(const AdssModel& model, double r_max, int node_count) {
  return build_family_profile(model, 0.0, r_max, node_count);
}

GraphProfile build_perturbed_profile(const AdssModel& model, double eps, double r_max,
                                     int node_count) {
  return build_family_profile(model, eps, r_max, node_count);
}

GraphProfile build_hyperbolic_profile(int n, double r_max, int node_count) {
  if (n < 3) throw std::invalid_argument("build_hyperbolic_profile: dimension must be >= 3");
  GraphProfile p;
  p.n = n;
  p.horizon_r = 0.0;
  p.r_max = r_max;
  p.du_eval = [](double) { return 0.0; };
  p.psi_eval = [](double r) { return 1.0 + r * r; };
  p.dpsi_eval = [](double r) { return 2.0 * r; };
  const int N = node_count;
  p.r_nodes.resize(N);
  p.u.assign(N, 0.0);
  p.du.assign(N, 0.0);
  p.phi.resize(N);
  p.psi.resize(N);
  p.dpsi.resize(N);
  for (int i = 0; i < N; ++i) {
    const double r = (i + 0.5) * r_max / N;
    p.r_nodes[i] = r;
    p.psi[i] = 1.0 + r * r;
    p.dpsi[i] = 2.0 * r;
    p.phi[i] = 1.0 / p.psi[i];
  }
  return p;
}

std::vector<double> scalar_curvature_radial(const GraphProfile& p) {
  std::vector<double> R(p.r_nodes.size());
  const double n = p.n;
  for (size_t i = 0; i < p.r_nodes.size(); ++i) {
    const double r = p.r_nodes[i];
    R[i] = (n - 1.0) * ((n - 2.0) * (1.0 - p.psi[i]) / (r * r) - p.dpsi[i] / r);
  }
  return R;
}

std::vector<double> theta(const GraphProfile& p) {
  std::vector<double> th(p.psi.size());
  for (size_t i = 0; i < p.psi.size(); ++i)
    th[i] = std::sqrt(radicand_check(p.psi[i], "theta"));
  return th;
}

MassBreakdown mass_formula(const GraphProfile& p) {
  if (!p.psi_eval || !p.dpsi_eval)
    throw std::invalid_argument("mass_formula: profile lacks analytic metric evaluators");
  const double n = p.n;
  const double omega = unit_sphere_area(p.n - 1);
  const double cn = af_constant(p.n);

  MassBreakdown b;
  b.horizon = 0.5 * std::pow(p.horizon_r, n - 2.0) * (1.0 + p.horizon_r * p.horizon_r);

  // Bulk term c_n int Theta (R + n(n-1)) dM with dM = sqrt(phi) r^{n-1} omega dr,
  // integrated in s = sqrt(r - r_h) where every factor is smooth.
  const double s_max = std::sqrt(p.r_max - p.horizon_r);
  const int panels = 256;
  const GaussRule& gr = bulk_rule();
  double bulk = 0.0;
  double min_mg = kInf;
  for (int pa = 0; pa < panels; ++pa) {
    const double a = s_max * pa / panels, bnd = s_max * (pa + 1) / panels;
    const double mid = 0.5 * (a + bnd), half = 0.5 * (bnd - a);
    double acc = 0.0;
    for (size_t k = 0; k < gr.x.size(); ++k) {
      const double s = mid + half * gr.x[k];
      const double r = p.horizon_r + s * s;
      const double psi = p.psi_eval(r);
      const double dpsi = p.dpsi_eval(r);
      const double R = (n - 1.0) * ((n - 2.0) * (1.0 - psi) / (r * r) - dpsi / r);
      const double mg = R + n * (n - 1.0);
      min_mg = std::min(min_mg, mg);
      const double th = std::sqrt(radicand_check(psi, "mass_formula"));
      const double sqrt_phi = 1.0 / th;  // Theta sqrt(phi) = 1
      acc += gr.w[k] * th * mg * sqrt_phi * std::pow(r, n - 1.0) * 2.0 * s;
    }
    bulk += half * acc;
  }
  b.bulk = cn * omega * bulk;
  b.total = b.bulk + b.horizon;
  b.min_mg = min_mg;
  b.mg_warning = min_mg < -1e-8;
  return b;
}

std::vector<double> mass_functional_samples(const GraphProfile& p,
                                            std::span<const double> r_samples) {
  if (!p.du_eval)
    throw std::invalid_argument("mass_functional: profile lacks an analytic u' evaluator");
  std::vector<double> vals;
  vals.reserve(r_samples.size());
  for (double r : r_samples) {
    const double sh = std::sinh(r), ch = std::cosh(r);
    const double up = p.du_eval(sh);
    // alpha = (phi - 1/cosh^2) cosh^2 = cosh^4 u'^2, no cancellation.
    const double alpha = ch * ch * ch * ch * up * up;
    vals.push_back(0.5 * std::pow(sh, p.n - 2.0) * ch * ch * alpha);
  }
  return vals;
}

const std::vector<double> kDefaultMassSamples = {6.0, 8.0, 10.0, 12.0};

double mass_functional(const GraphProfile& p, std::span<const double> r_samples,
                       bool* divergence_warning) {
  if (r_samples.size() < 3)
    throw std::invalid_argument("mass_functional: need at least three sample radii");
  const double dr = r_samples[1] - r_samples[0];
  for (size_t i = 1; i + 1 < r_samples.size(); ++i)
    if (std::abs((r_samples[i + 1] - r_samples[i]) - dr) > 1e-9)
      throw std::invalid_argument("mass_functional: samples must be evenly spaced");

  const std::vector<double> m = mass_functional_samples(p, r_samples);
  if (divergence_warning) *divergence_warning = false;
  const size_t N = m.size();
  const double d_last = m[N - 1] - m[N - 2];
  const double d_prev = m[N - 2] - m[N - 3];
  const double scale = std::max(1.0, std::abs(m[N - 1]));
  if (std::abs(d_last) < 1e-13 * scale) return m[N - 1];
  const double ratio = d_last / d_prev;
  if (!(std::abs(ratio) < 1.0)) {
    // alpha fails the decay threshold; the flux integral does not settle.
    if (divergence_warning) *divergence_warning = true;
    return m[N - 1];
  }
  // Geometric tail sum of m(r) = m_inf + c e^{-beta r}.
  return m[N - 1] + d_last * ratio / (1.0 - ratio);
}

PenroseVerdict penrose_check(const GraphProfile& p) {
  if (!(p.horizon_r > 0.0))
    throw std::invalid_argument("penrose_check: profile carries no horizon");
  PenroseVerdict v;
  v.breakdown = mass_formula(p);
  bool div = false;
  v.breakdown.functional_limit = mass_functional(p, kDefaultMassSamples, &div);
  v.breakdown.decay_warning = div;
  const double n = p.n;
  const double omega = unit_sphere_area(p.n - 1);
  v.horizon_area = omega * std::pow(p.horizon_r, n - 1.0);
  const double ac = v.horizon_area / omega;
  v.breakdown.penrose_rhs =
      0.5 * (std::pow(ac, (n - 2.0) / (n - 1.0)) + std::pow(ac, n / (n - 1.0)));
  v.margin_formula = v.breakdown.total - v.breakdown.penrose_rhs;
  v.margin_functional = v.breakdown.functional_limit - v.breakdown.penrose_rhs;
  v.equality = std::abs(v.margin_formula) <= 1e-6;
  return v;
}

ChainReport af_to_penrose_chain(const RadialGraph& horizon_graph, double mass) {
  const GeometryFields f = compute_fields(horizon_graph);
  const FunctionalReport rep = evaluate(f);
  ChainReport c;
  c.mass = mass;
  c.curvature_integral = rep.af_lhs;
  c.penrose_rhs = rep.af_rhs;
  c.margin_mass_vs_integral = mass - rep.af_lhs;
  c.margin_integral_vs_rhs = rep.af_lhs - rep.af_rhs;
  c.min_h = rep.min_h;
  c.mean_convex = rep.min_h >= 0.0;
  return c;
}

void write_profile_csv(std::ostream& os, const GraphProfile& p) {
  const std::vector<double> R = scalar_curvature_radial(p);
  const std::vector<double> th = theta(p);
  os << "r,u,du,phi,R,Theta\n";
  for (size_t i = 0; i < p.r_nodes.size(); ++i) {
    os << format_double(p.r_nodes[i]) << ',' << format_double(p.u[i]) << ','
       << format_double(p.du[i]) << ',' << format_double(p.phi[i]) << ','
       << format_double(R[i]) << ',' << format_double(th[i]) << '\n';
  }
}

}  // namespace hyplab
