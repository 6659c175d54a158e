#pragma once

#include <stdexcept>
#include <vector>

namespace hyplab {

// Nodal values of an axisymmetric function on S^{n-1}, one value per
// polar-angle grid node.
using Field = std::vector<double>;

// Cell-centered discretization of the polar angle phi in (0, pi) for
// axisymmetric fields on S^{n-1}.  Nodes sit strictly inside the interval,
// so cot(phi) and every curvature formula built on it stay finite.
struct SphereGrid {
  int n = 0;     // ambient dimension; the sphere is S^{n-1}
  int m = 0;     // node count
  double h = 0;  // step pi/m
  std::vector<double> phi;      // (i + 1/2) h
  std::vector<double> sin_phi;
  std::vector<double> cos_phi;
  std::vector<double> cot_phi;
  std::vector<double> weight;   // quadrature weights, sin^{n-2} measure folded in
};

// Requires n >= 3 and m >= 16.
SphereGrid make_grid(int n, int m);

// Area of the unit k-sphere, omega_k = 2 pi^{(k+1)/2} / Gamma((k+1)/2).
double unit_sphere_area(int k);

// Fourth-order centered derivatives in phi.  Ghost values come from even
// reflection across both poles; smooth axisymmetric functions on the sphere
// have even extensions there, so no order is lost.
Field d_dphi(const SphereGrid& g, const Field& f);
Field d2_dphi2(const SphereGrid& g, const Field& f);

// omega_{n-2} * int_0^pi f(phi) sin^{n-2}(phi) dphi.  The weights reproduce
// the exact moments of cos(k phi) against the sin^{n-2} measure for k < m,
// so the rule is spectrally accurate for smooth even data.  quadrature(1)
// equals unit_sphere_area(n-1) to roundoff.
double quadrature(const SphereGrid& g, const Field& f);

}  // namespace hyplab
