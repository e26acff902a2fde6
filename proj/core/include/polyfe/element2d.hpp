#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "polyfe/barycentric.hpp"
#include "polyfe/geometry.hpp"
#include "polyfe/quadrature.hpp"

namespace polyfe {

/// Minimal H(div) element on a convex polygon: one basis function per edge,
/// with constant unit normal trace on its own edge and zero on the others.
///
/// Each q_i combines the radial field (x - x_*) with rotated coordinate
/// gradients,
///   q_i = c_{i,0} (x - x_*) + sum_k c_{i,k} rot90(grad l_k),
/// and the coefficients come from a closed formula over the table
///   b_{i,l} = delta_{il} |e_l| - |e_i| |T_l| / |T|,
/// where T_l is the triangle spanned by edge l and x_*.
class HdivBasis2D {
 public:
  static HdivBasis2D build(const Polygon2D& poly, std::optional<Vec2> xstar = std::nullopt);

  int size() const { return static_cast<int>(c_.rows()); }
  const Polygon2D& cell() const { return poly_; }
  const Vec2& reference_point() const { return xstar_; }

  double radial_coefficient(int i) const { return c0_(i); }      // c_{i,0}
  double gradient_coefficient(int i, int k) const;               // c_{i,k}
  double b_table(int i, int l) const;                            // b_{i,l}

  Vec2 eval(int i, const Vec2& x) const;
  /// All basis values at x as columns of a 2 x n matrix.
  Eigen::Matrix2Xd eval_all(const Vec2& x) const;
  Eigen::Matrix2Xd eval_all(const BarycentricEval<2>& bc) const;

  /// Divergence of q_i, constant over the cell: |e_i| / |T|.
  double divergence(int i) const;

  /// Mean normal flux of a vector field over each edge (the degrees of
  /// freedom), by Gauss quadrature along the edges.
  Eigen::VectorXd flux_dofs(const std::function<Vec2(const Vec2&)>& q, int npoints = 10) const;
  /// Field reconstructed from dof values, evaluated at x.
  Vec2 interpolate(const Eigen::VectorXd& dofs, const Vec2& x) const;

  /// Per-edge max deviation of the normal traces from the Kronecker delta.
  /// Traces are sampled at two inward offsets (eps and 2 eps, relative to
  /// the diameter) and extrapolated to the boundary.
  Eigen::VectorXd normal_trace_residuals(int samples_per_edge = 5, double eps = 1e-7) const;

 private:
  HdivBasis2D(Polygon2D poly, Vec2 xstar);

  Polygon2D poly_;
  Vec2 xstar_;
  Eigen::VectorXd c0_;
  Eigen::MatrixXd c_;
  Eigen::MatrixXd b_;
};

/// Nodal interpolant sum_i values_i l_i(x) and its rotated gradient
/// (the 2D curl of the interpolant).
double nodal_interpolant(const Polygon2D& poly, const Eigen::VectorXd& vertex_values, const Vec2& x);
Vec2 nodal_interpolant_curl(const Polygon2D& poly, const Eigen::VectorXd& vertex_values, const Vec2& x);

/// Cell mean (L^2 projection onto constants) by polygon quadrature.
double cell_mean(const Polygon2D& poly, const std::function<double(const Vec2&)>& f, int degree = 10);
/// Componentwise cell mean of a vector field.
Vec2 cell_mean(const Polygon2D& poly, const std::function<Vec2(const Vec2&)>& f, int degree = 10);

/// Scalar test field with its gradient, for the commuting-diagram checks.
struct ScalarField {
  std::function<double(const Vec2&)> value;
  std::function<Vec2(const Vec2&)> gradient;
};
/// Vector test field with its divergence.
struct FluxField {
  std::function<Vec2(const Vec2&)> value;
  std::function<double(const Vec2&)> divergence;
};

/// Residuals of the two commuting identities on one cell:
///  - div of the flux interpolant equals the cell mean of the divergence;
///  - interpolating the rotated gradient of phi equals the rotated gradient
///    of the nodal interpolant of phi, compared pointwise at the samples.
struct CommuteResiduals {
  double divergence;
  double curl;
};
CommuteResiduals commute_residuals(const HdivBasis2D& basis, const ScalarField& phi,
                                   const FluxField& q, const std::vector<Vec2>& samples);

/// Deterministic tensor grid clipped to the strict interior; at least
/// min_points points, offset from the boundary by margin * diameter.
std::vector<Vec2> interior_grid(const Polygon2D& poly, int min_points = 200, double margin = 1e-3);

}  // namespace polyfe
