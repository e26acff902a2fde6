#pragma once

#include <vector>

#include "polyfe/geometry.hpp"
#include "polyfe/polyhedron.hpp"

namespace polyfe {

/// Values and gradients of all barycentric coordinates at one point.
template <int Dim>
struct BarycentricEval {
  using Vec = Eigen::Matrix<double, Dim, 1>;

  Vec point;
  std::vector<double> values;
  std::vector<Vec> gradients;

  int size() const { return static_cast<int>(values.size()); }
};

/// Rational (Wachspress) coordinates of a convex polygon, with analytic
/// gradients. The formula is valid on the open interior only; x must keep a
/// distance of at least 1e-14 * diameter from the boundary.
BarycentricEval<2> wachspress(const Polygon2D& poly, const Vec2& x);

/// Rational coordinates of a convex polyhedron with triangular or
/// parallelogram faces, via the determinant-fan construction over the
/// ordered faces incident to each vertex. Gradients are analytic.
BarycentricEval<3> wachspress(const Polyhedron& poly, const Vec3& x);

/// Boundary values on edge `edge` at parameter s in [0, 1]: coordinates are
/// piecewise linear on the boundary, so the trace is (1-s, s) on the edge's
/// endpoints and zero elsewhere.
std::vector<double> edge_trace(const Polygon2D& poly, int edge, double s);

/// Residuals of the gradient cross-product identities that triangles and
/// parallelograms satisfy: for a triangle, det[grad l_i, grad l_j] - 1/(2|T|)
/// over the three cyclic pairs; for a parallelogram, the two determinant
/// sums minus 1/|T|. Other shapes are rejected.
std::vector<double> cross_product_residuals(const Polygon2D& poly, const Vec2& x);

}  // namespace polyfe
