#pragma once

#include "radial_graph.hpp"

namespace hyplab {

// Exact and parametric test hypersurfaces with known properties.
struct ShapeSpec {
  enum class Variant { CenteredSphere, OffcenterSphere, PerturbedSphere };
  Variant variant = Variant::CenteredSphere;
  double r = 1.0;   // centered / perturbed base radius
  double d = 0.0;   // offcenter: center distance along the symmetry axis
  double R = 1.0;   // offcenter: intrinsic radius, requires 0 <= d < R
  double eps = 0.0; // perturbed: Legendre amplitude
  int l = 2;        // perturbed: Legendre index
};

// Nodal u for the requested shape.
//   centered:  u = r
//   offcenter: hyperbolic law of cosines
//              cosh R = cosh d cosh u - sinh d sinh u cos(phi),
//              solved per node to 1e-13 on (R-d, R+d)
//   perturbed: u = r + eps P_l(cos phi), rejected unless min H > 0
RadialGraph build(const ShapeSpec& spec, std::shared_ptr<const SphereGrid> grid);

// Closed forms for a centered geodesic sphere of radius r in H^n.
struct ClosedFormReport {
  double A = 0;   // omega_{n-1} sinh^{n-1} r
  double H = 0;   // (n-1) coth r
  double p = 0;   // -sinh r
  double I = 0;   // (n-1) omega_{n-1} sinh^{n-2} r cosh^2 r
  double J = 0;   // omega_{n-1} sinh^n r
  double Kq = 0;  // equals J
  double L = 0;   // (n-1) omega_{n-1}
  double M = 0;   // (n-1) omega_{n-1}
};

ClosedFormReport sphere_closed_forms(double r, int n);

// Legendre polynomial P_l(x) by the three-term recurrence.
double legendre_p(int l, double x);

}  // namespace hyplab
