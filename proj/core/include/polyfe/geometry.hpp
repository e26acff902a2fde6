#pragma once

#include <Eigen/Dense>
#include <vector>

#include "polyfe/errors.hpp"

namespace polyfe {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

inline double cross2(const Vec2& a, const Vec2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Quarter turn: maps a gradient to the 2D curl of the underlying scalar.
inline Vec2 rot90(const Vec2& g) { return Vec2(-g.y(), g.x()); }

/// Convex polygon with vertices in counterclockwise order.
/// Edge i runs from vertex i to vertex (i+1) mod n; all vertex and edge
/// accessors accept out-of-range indices and wrap them.
class Polygon2D {
 public:
  explicit Polygon2D(std::vector<Vec2> vertices);

  int size() const { return static_cast<int>(verts_.size()); }
  const Vec2& vertex(int i) const { return verts_[wrap(i)]; }
  const std::vector<Vec2>& vertices() const { return verts_; }

  double edge_length(int i) const { return edge_len_[wrap(i)]; }
  /// Unit tangent along edge i in counterclockwise traversal.
  Vec2 edge_tangent(int i) const;
  /// Unit outward normal of edge i.
  Vec2 edge_normal(int i) const;
  /// Point v_i + s (v_{i+1} - v_i), s in [0, 1].
  Vec2 edge_point(int i, double s) const;

  double area() const { return area_; }
  double diameter() const { return diameter_; }
  const Vec2& centroid() const { return centroid_; }

  /// Signed distance from x to the edge-i supporting line, positive inside.
  double edge_distance(int i, const Vec2& x) const;
  /// Minimum of edge_distance over all edges; positive iff x is interior.
  double boundary_distance(const Vec2& x) const;
  bool contains(const Vec2& x) const { return boundary_distance(x) >= 0.0; }

  int wrap(int i) const {
    const int n = size();
    i %= n;
    return i < 0 ? i + n : i;
  }

 private:
  std::vector<Vec2> verts_;
  std::vector<double> edge_len_;
  double area_ = 0.0;
  double diameter_ = 0.0;
  Vec2 centroid_ = Vec2::Zero();
};

}  // namespace polyfe
