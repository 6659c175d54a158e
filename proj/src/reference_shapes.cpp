#include "reference_shapes.hpp"

#include <cmath>
#include <string>

namespace hyplab {

namespace {

// Root of cosh R = cosh d cosh u - sinh d sinh u cos(phi) on [R-d, R+d],
// safeguarded Newton with a bisection bracket.
double offcenter_radius(double d, double R, double cos_phi) {
  if (d == 0.0) return R;
  const double chd = std::cosh(d), shd = std::sinh(d), chR = std::cosh(R);
  auto fn = [&](double u) { return chd * std::cosh(u) - shd * std::sinh(u) * cos_phi - chR; };
  auto dfn = [&](double u) { return chd * std::sinh(u) - shd * std::cosh(u) * cos_phi; };
  double lo = R - d, hi = R + d;
  // f(lo) <= 0 <= f(hi); boundary roots occur exactly at the poles, which
  // the cell-centered grid never samples.
  double u = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double fu = fn(u);
    if (fu > 0.0) hi = u; else lo = u;
    double step = fu / dfn(u);
    double next = u - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) < 1e-15 * (1.0 + std::abs(u)) || hi - lo < 1e-15) {
      u = next;
      break;
    }
    u = next;
  }
  if (std::abs(fn(u)) > 1e-12 * chR)
    throw std::runtime_error("offcenter_radius: root refinement failed");
  return u;
}

}  // namespace

double legendre_p(int l, double x) {
  if (l == 0) return 1.0;
  double pm1 = 1.0, p = x;
  for (int k = 2; k <= l; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p - (k - 1.0) * pm1) / k;
    pm1 = p;
    p = pk;
  }
  return p;
}

RadialGraph build(const ShapeSpec& spec, std::shared_ptr<const SphereGrid> grid) {
  if (!grid) throw std::invalid_argument("build: null grid");
  const SphereGrid& g = *grid;
  RadialGraph graph;
  graph.grid = grid;
  graph.u.resize(g.m);

  switch (spec.variant) {
    case ShapeSpec::Variant::CenteredSphere: {
      if (!(spec.r > 0.0)) throw std::invalid_argument("build: sphere radius must be positive");
      for (int i = 0; i < g.m; ++i) graph.u[i] = spec.r;
      break;
    }
    case ShapeSpec::Variant::OffcenterSphere: {
      if (!(spec.R > 0.0) || spec.d < 0.0 || spec.d >= spec.R)
        throw std::invalid_argument("build: offcenter sphere needs 0 <= d < R");
      for (int i = 0; i < g.m; ++i)
        graph.u[i] = offcenter_radius(spec.d, spec.R, g.cos_phi[i]);
      break;
    }
    case ShapeSpec::Variant::PerturbedSphere: {
      if (!(spec.r > 0.0)) throw std::invalid_argument("build: sphere radius must be positive");
      if (spec.l < 0) throw std::invalid_argument("build: Legendre index must be >= 0");
      for (int i = 0; i < g.m; ++i)
        graph.u[i] = spec.r + spec.eps * legendre_p(spec.l, g.cos_phi[i]);
      const double min_h = min_mean_curvature(compute_fields(graph));
      if (!(min_h > 0.0))
        throw std::invalid_argument("build: perturbed sphere is not strictly mean convex (min H = " +
                                    std::to_string(min_h) + ")");
      break;
    }
  }
  return graph;
}

ClosedFormReport sphere_closed_forms(double r, int n) {
  if (!(r > 0.0)) throw std::invalid_argument("sphere_closed_forms: radius must be positive");
  const double omega = unit_sphere_area(n - 1);
  const double sh = std::sinh(r), ch = std::cosh(r);
  ClosedFormReport c;
  c.A = omega * std::pow(sh, n - 1.0);
  c.H = (n - 1.0) * ch / sh;
  c.p = -sh;
  c.I = (n - 1.0) * omega * std::pow(sh, n - 2.0) * ch * ch;
  c.J = omega * std::pow(sh, static_cast<double>(n));
  c.Kq = c.J;
  c.L = (n - 1.0) * omega;
  c.M = c.L;
  return c;
}

}  // namespace hyplab
