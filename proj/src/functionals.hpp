#pragma once

#include <iosfwd>

#include "radial_graph.hpp"

namespace hyplab {

// c_n = 1 / (2 (n-1) omega_{n-1}).
double af_constant(int n);

// Global quantities and inequality residuals of one hypersurface snapshot.
//   I  = int rho H dSigma
//   J  = -int p dSigma
//   Kq = omega_{n-1} * (A/omega_{n-1})^{n/(n-1)}
//   L  = (I - (n-1) Kq) / Ac^{(n-2)/(n-1)}
//   M  = (I - (n-1) J)  / Ac^{(n-2)/(n-1)}
// L >= (n-1) omega_{n-1} is the sharp bound for star-shaped strictly mean
// convex hypersurfaces, with equality exactly on centered geodesic spheres;
// M obeys the same bound.
struct FunctionalReport {
  int n = 0;
  double A = 0;    // area
  double Ac = 0;   // A / omega_{n-1}
  double I = 0;
  double J = 0;
  double Kq = 0;
  double L = 0;
  double M = 0;
  double hk_deficit = 0;  // (n-1) int rho/H + int p, >= 0 by Heintze-Karcher
  bool hk_valid = false;  // false when H <= 0 somewhere (division by H)
  double mink1_residual = 0;  // int [(n-1) rho + H p]        (exactly 0 in the continuum)
  double mink2_residual = 0;  // int [(n-2) rho H + 2 p sigma2]  (exactly 0 in the continuum)
  double af_lhs = 0;  // c_n I
  double af_rhs = 0;  // (Ac^{(n-2)/(n-1)} + Ac^{n/(n-1)}) / 2
  double min_h = 0;
  double max_h = 0;
};

FunctionalReport evaluate(const GeometryFields& fields);

// af_lhs - af_rhs; nonnegative for star-shaped strictly mean convex inputs,
// zero exactly for centered geodesic spheres.
double af_margin(const FunctionalReport& r);

// M - (n-1) omega_{n-1}; same sign structure.
double bhw_margin(const FunctionalReport& r);

// Fixed CSV row format shared by every report table:
// t,A,I,J,Kq,L,M,hk_deficit,mink1_residual,mink2_residual,af_lhs,af_rhs,minH,maxH
void write_report_csv_header(std::ostream& os);
void write_report_csv_row(std::ostream& os, double t, const FunctionalReport& r);

// Locale-independent %.17g formatting used by all CSV/JSON writers.
std::string format_double(double v);

}  // namespace hyplab
