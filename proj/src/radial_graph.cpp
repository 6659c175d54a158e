#include "radial_graph.hpp"

#include <algorithm>
#include <cmath>

namespace hyplab {

GeometryFields compute_fields(const RadialGraph& graph) {
  if (!graph.grid) throw std::invalid_argument("compute_fields: graph has no grid");
  const SphereGrid& g = *graph.grid;
  if (static_cast<int>(graph.u.size()) != g.m)
    throw std::invalid_argument("compute_fields: u length does not match grid");

  for (int i = 0; i < g.m; ++i) {
    if (!std::isfinite(graph.u[i]) || graph.u[i] <= 0.0)
      throw GeometryError("compute_fields: u must be finite and positive", i);
  }

  GeometryFields f;
  f.grid = graph.grid;
  f.n = g.n;
  const int m = g.m;
  f.rho.resize(m);
  f.rho_dot.resize(m);
  f.v.resize(m);
  f.W.resize(m);
  f.kappa_rad.resize(m);
  f.kappa_ang.resize(m);
  f.H.resize(m);
  f.sigma2.resize(m);
  f.p.resize(m);
  f.dSigma.resize(m);

  for (int i = 0; i < m; ++i) {
    f.rho[i] = std::cosh(graph.u[i]);
    f.rho_dot[i] = std::sinh(graph.u[i]);
    f.v[i] = std::log(std::tanh(0.5 * graph.u[i]));
  }

  // v' and v'' by the chain rule on nodal u rather than differencing v:
  // v saturates for large u and direct differences would cancel.
  const Field du = d_dphi(g, graph.u);
  const Field d2u = d2_dphi2(g, graph.u);
  f.dv.resize(m);
  f.d2v.resize(m);
  for (int i = 0; i < m; ++i) {
    f.dv[i] = du[i] / f.rho_dot[i];
    f.d2v[i] = d2u[i] / f.rho_dot[i] -
               du[i] * du[i] * f.rho[i] / (f.rho_dot[i] * f.rho_dot[i]);
  }

  const double nn = g.n;
  for (int i = 0; i < m; ++i) {
    const double w2 = 1.0 + f.dv[i] * f.dv[i];
    f.W[i] = std::sqrt(w2);
    const double denom = f.W[i] * f.rho_dot[i];
    f.kappa_rad[i] = (f.rho[i] - f.d2v[i] / w2) / denom;
    f.kappa_ang[i] = (f.rho[i] - g.cot_phi[i] * f.dv[i]) / denom;
    f.H[i] = f.kappa_rad[i] + (nn - 2.0) * f.kappa_ang[i];
    f.sigma2[i] = (nn - 2.0) * f.kappa_rad[i] * f.kappa_ang[i] +
                  0.5 * (nn - 2.0) * (nn - 3.0) * f.kappa_ang[i] * f.kappa_ang[i];
    f.p[i] = -f.rho_dot[i] / f.W[i];
    f.dSigma[i] = std::pow(f.rho_dot[i], nn - 1.0) * f.W[i];
    if (!std::isfinite(f.H[i]) || !std::isfinite(f.dSigma[i]))
      throw GeometryError("compute_fields: non-finite geometry", i);
  }
  return f;
}

double min_mean_curvature(const GeometryFields& fields) {
  return *std::min_element(fields.H.begin(), fields.H.end());
}

}  // namespace hyplab
