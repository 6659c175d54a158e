#pragma once

#include <memory>
#include <stdexcept>

#include "sphere_grid.hpp"

namespace hyplab {

// Raised when a graph fails to produce finite geometry; carries the first
// offending node index.
struct GeometryError : std::runtime_error {
  int node;
  GeometryError(const std::string& msg, int node_index)
      : std::runtime_error(msg), node(node_index) {}
};

// Star-shaped hypersurface in H^n as a radial graph over a geodesic sphere:
// nodal values of the geodesic distance u(phi) > 0.
struct RadialGraph {
  std::shared_ptr<const SphereGrid> grid;
  Field u;
};

// Pointwise extrinsic geometry of a radial graph, in the model
// g0 = dr^2 + sinh^2(r) h.  The unit normal is the inward one, so geodesic
// spheres have positive principal curvatures coth(r).
struct GeometryFields {
  std::shared_ptr<const SphereGrid> grid;
  int n = 0;
  Field rho;        // cosh u
  Field rho_dot;    // sinh u
  Field v;          // log tanh(u/2), antiderivative of 1/sinh
  Field dv;         // v' = u'/sinh u
  Field d2v;        // v'' = u''/sinh u - u'^2 cosh u / sinh^2 u
  Field W;          // sqrt(1 + v'^2)
  Field kappa_rad;  // (rho - v''/W^2) / (W rho_dot)
  Field kappa_ang;  // (rho - cot(phi) v') / (W rho_dot), multiplicity n-2
  Field H;          // kappa_rad + (n-2) kappa_ang
  Field sigma2;     // second elementary symmetric function of the curvatures
  Field p;          // support function -rho_dot/W, never positive
  Field dSigma;     // area-element density rho_dot^{n-1} W relative to d mu_h
};

// Fills every field; throws GeometryError on u <= 0 or non-finite values.
GeometryFields compute_fields(const RadialGraph& graph);

// Minimum of H over the nodes; > 0 certifies strict mean convexity.
double min_mean_curvature(const GeometryFields& fields);

}  // namespace hyplab
