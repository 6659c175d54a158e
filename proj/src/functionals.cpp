#include "functionals.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

namespace hyplab {

double af_constant(int n) { return 1.0 / (2.0 * (n - 1) * unit_sphere_area(n - 1)); }

FunctionalReport evaluate(const GeometryFields& f) {
  const SphereGrid& g = *f.grid;
  const int m = g.m;
  const double n = f.n;
  const double omega = unit_sphere_area(f.n - 1);

  Field area_d(m), rhoH_d(m), supp_d(m), hk_d(m), mink1_d(m), mink2_d(m);
  double min_h = f.H[0], max_h = f.H[0];
  for (int i = 0; i < m; ++i) {
    area_d[i] = f.dSigma[i];
    rhoH_d[i] = f.rho[i] * f.H[i] * f.dSigma[i];
    supp_d[i] = -f.p[i] * f.dSigma[i];
    mink1_d[i] = ((n - 1.0) * f.rho[i] + f.H[i] * f.p[i]) * f.dSigma[i];
    mink2_d[i] = ((n - 2.0) * f.rho[i] * f.H[i] + 2.0 * f.p[i] * f.sigma2[i]) * f.dSigma[i];
    min_h = std::min(min_h, f.H[i]);
    max_h = std::max(max_h, f.H[i]);
  }

  FunctionalReport r;
  r.n = f.n;
  r.A = quadrature(g, area_d);
  r.Ac = r.A / omega;
  r.I = quadrature(g, rhoH_d);
  r.J = quadrature(g, supp_d);
  r.Kq = omega * std::pow(r.Ac, n / (n - 1.0));
  const double ac_pow = std::pow(r.Ac, (n - 2.0) / (n - 1.0));
  r.L = (r.I - (n - 1.0) * r.Kq) / ac_pow;
  r.M = (r.I - (n - 1.0) * r.J) / ac_pow;
  r.min_h = min_h;
  r.max_h = max_h;

  r.hk_valid = min_h > 0.0;
  if (r.hk_valid) {
    for (int i = 0; i < m; ++i) hk_d[i] = f.rho[i] / f.H[i] * f.dSigma[i];
    r.hk_deficit = (n - 1.0) * quadrature(g, hk_d) - r.J;
  } else {
    r.hk_deficit = std::numeric_limits<double>::quiet_NaN();
  }

  r.mink1_residual = quadrature(g, mink1_d);
  r.mink2_residual = quadrature(g, mink2_d);
  r.af_lhs = af_constant(f.n) * r.I;
  r.af_rhs = 0.5 * (ac_pow + std::pow(r.Ac, n / (n - 1.0)));
  return r;
}

double af_margin(const FunctionalReport& r) { return r.af_lhs - r.af_rhs; }

double bhw_margin(const FunctionalReport& r) {
  return r.M - (r.n - 1.0) * unit_sphere_area(r.n - 1);
}

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_report_csv_header(std::ostream& os) {
  os << "t,A,I,J,Kq,L,M,hk_deficit,mink1_residual,mink2_residual,af_lhs,af_rhs,minH,maxH\n";
}

void write_report_csv_row(std::ostream& os, double t, const FunctionalReport& r) {
  const double cols[] = {t,    r.A,  r.I,          r.J,
                         r.Kq, r.L,  r.M,          r.hk_deficit,
                         r.mink1_residual, r.mink2_residual, r.af_lhs, r.af_rhs,
                         r.min_h, r.max_h};
  bool first = true;
  for (double c : cols) {
    if (!first) os << ',';
    os << format_double(c);
    first = false;
  }
  os << '\n';
}

}  // namespace hyplab
