#pragma once

#include <Eigen/Dense>
#include <vector>

#include "polyfe/geometry.hpp"

namespace polyfe {

/// Gauss-Legendre nodes and weights on [-1, 1]; exact for polynomials of
/// degree 2*npoints - 1. Supports npoints in [1, 32].
struct GaussRule1D {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
const GaussRule1D& gauss_legendre(int npoints);

/// Gauss rule mapped onto the segment [a, b]; weights sum to |b - a|.
struct EdgeRule {
  std::vector<Vec2> points;
  Eigen::VectorXd weights;

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (size_t q = 0; q < points.size(); ++q) s += weights(q) * f(points[q]);
    return s;
  }
};
EdgeRule edge_rule(const Vec2& a, const Vec2& b, int npoints);

/// Positive-weight rule on a convex polygon, built by fanning triangles from
/// the centroid and collapsing a tensor Gauss rule onto each triangle.
/// Exact for polynomials up to the requested degree; weights sum to the area.
class PolygonRule {
 public:
  PolygonRule(const Polygon2D& poly, int degree);

  int degree() const { return degree_; }
  const std::vector<Vec2>& points() const { return points_; }
  const Eigen::VectorXd& weights() const { return weights_; }

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (size_t q = 0; q < points_.size(); ++q) s += weights_(q) * f(points_[q]);
    return s;
  }

  static constexpr int min_degree = 1;
  static constexpr int max_degree = 20;

 private:
  int degree_;
  std::vector<Vec2> points_;
  Eigen::VectorXd weights_;
};

}  // namespace polyfe
