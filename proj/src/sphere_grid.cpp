#include "sphere_grid.hpp"

#include <cmath>

namespace hyplab {

namespace {

// Sign of Gamma(x) away from poles; Gamma alternates sign between
// consecutive nonpositive integers.
double gamma_sign(double x) {
  if (x > 0.0) return 1.0;
  return (static_cast<long>(std::floor(-x)) % 2 == 0) ? -1.0 : 1.0;
}

// mu_k = int_0^pi cos(k phi) sin^nu(phi) dphi
//      = pi cos(k pi/2) Gamma(nu+1) / (2^nu Gamma(1+(nu+k)/2) Gamma(1+(nu-k)/2)).
// Vanishes for odd k, and for even nu once the trailing Gamma hits a pole.
double weight_moment(int nu, int k) {
  if (k % 2 == 1) return 0.0;
  const double b = 1.0 + 0.5 * (nu - k);
  if (nu % 2 == 0 && b < 0.5) return 0.0;
  const double a = 1.0 + 0.5 * (nu + k);
  const double logmag = std::log(M_PI) + std::lgamma(nu + 1.0) -
                        nu * std::log(2.0) - std::lgamma(a) - std::lgamma(b);
  double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;  // cos(k pi/2), k even
  sign *= gamma_sign(b);
  return sign * std::exp(logmag);
}

// Even reflection across phi = 0 and phi = pi between nodes.
inline double ghost(const Field& f, int m, int i) {
  if (i < 0) return f[-i - 1];
  if (i >= m) return f[2 * m - 1 - i];
  return f[i];
}

void check_length(const SphereGrid& g, const Field& f, const char* op) {
  if (static_cast<int>(f.size()) != g.m)
    throw std::invalid_argument(std::string(op) + ": field length does not match grid");
}

}  // namespace

double unit_sphere_area(int k) {
  if (k <= 0) throw std::domain_error("unit_sphere_area: k must be >= 1");
  return 2.0 * std::pow(M_PI, 0.5 * (k + 1)) / std::tgamma(0.5 * (k + 1));
}

SphereGrid make_grid(int n, int m) {
  if (n < 3) throw std::domain_error("make_grid: ambient dimension must be >= 3");
  if (m < 16) throw std::domain_error("make_grid: node count must be >= 16");
  SphereGrid g;
  g.n = n;
  g.m = m;
  g.h = M_PI / m;
  g.phi.resize(m);
  g.sin_phi.resize(m);
  g.cos_phi.resize(m);
  g.cot_phi.resize(m);
  for (int i = 0; i < m; ++i) {
    g.phi[i] = (i + 0.5) * g.h;
    g.sin_phi[i] = std::sin(g.phi[i]);
    g.cos_phi[i] = std::cos(g.phi[i]);
    g.cot_phi[i] = g.cos_phi[i] / g.sin_phi[i];
  }
  // Exact-moment weights at the midpoint nodes.  The raw sin^{nu}(phi_i)*h
  // midpoint rule carries an O(h^2) endpoint defect for odd nu, far above
  // the accuracy budget of the functionals built on this grid.
  const int nu = n - 2;
  std::vector<double> mu(m);
  for (int k = 0; k < m; ++k) mu[k] = weight_moment(nu, k);
  const double scale = unit_sphere_area(nu) / m;
  g.weight.resize(m);
  for (int i = 0; i < m; ++i) {
    double w = mu[0];
    for (int k = 2; k < m; k += 2) w += 2.0 * mu[k] * std::cos(k * g.phi[i]);
    g.weight[i] = scale * w;
  }
  return g;
}

Field d_dphi(const SphereGrid& g, const Field& f) {
  check_length(g, f, "d_dphi");
  const int m = g.m;
  Field out(m);
  const double c = 1.0 / (12.0 * g.h);
  for (int i = 0; i < m; ++i)
    out[i] = c * (ghost(f, m, i - 2) - 8.0 * ghost(f, m, i - 1) +
                  8.0 * ghost(f, m, i + 1) - ghost(f, m, i + 2));
  return out;
}

Field d2_dphi2(const SphereGrid& g, const Field& f) {
  check_length(g, f, "d2_dphi2");
  const int m = g.m;
  Field out(m);
  const double c = 1.0 / (12.0 * g.h * g.h);
  for (int i = 0; i < m; ++i)
    out[i] = c * (-ghost(f, m, i - 2) + 16.0 * ghost(f, m, i - 1) - 30.0 * f[i] +
                  16.0 * ghost(f, m, i + 1) - ghost(f, m, i + 2));
  return out;
}

double quadrature(const SphereGrid& g, const Field& f) {
  check_length(g, f, "quadrature");
  double s = 0.0;
  for (int i = 0; i < g.m; ++i) s += f[i] * g.weight[i];
  return s;
}

}  // namespace hyplab
