#include "polyfe/geometry.hpp"

#include <cmath>

namespace polyfe {

Polygon2D::Polygon2D(std::vector<Vec2> vertices) : verts_(std::move(vertices)) {
  const int n = size();
  if (n < 3) throw GeometryError("polygon needs at least 3 vertices");

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      diameter_ = std::max(diameter_, (verts_[i] - verts_[j]).norm());
  if (diameter_ <= 0.0) throw GeometryError("degenerate polygon: zero diameter");

  edge_len_.resize(n);
  double twice_area = 0.0;
  Vec2 moment = Vec2::Zero();
  for (int i = 0; i < n; ++i) {
    const Vec2& a = verts_[i];
    const Vec2& b = verts_[(i + 1) % n];
    edge_len_[i] = (b - a).norm();
    if (edge_len_[i] <= 1e-14 * diameter_)
      throw GeometryError("degenerate polygon: zero-length edge " + std::to_string(i));
    const double c = cross2(a, b);
    twice_area += c;
    moment += (a + b) * c;
  }
  area_ = 0.5 * twice_area;
  if (area_ <= 1e-14 * diameter_ * diameter_)
    throw GeometryError("polygon vertices are not in counterclockwise order");
  centroid_ = moment / (6.0 * area_);

  // Convexity: turns never to the right, and at least 3 strict left turns.
  int strict = 0;
  const double tol = 1e-12 * diameter_ * diameter_;
  for (int i = 0; i < n; ++i) {
    const Vec2 e0 = verts_[(i + 1) % n] - verts_[i];
    const Vec2 e1 = verts_[(i + 2) % n] - verts_[(i + 1) % n];
    const double c = cross2(e0, e1);
    if (c < -tol) throw GeometryError("polygon is not convex at vertex " + std::to_string((i + 1) % n));
    if (c > tol) ++strict;
  }
  if (strict < 3) throw GeometryError("degenerate polygon: fewer than 3 strict corners");
}

Vec2 Polygon2D::edge_tangent(int i) const {
  i = wrap(i);
  return (verts_[(i + 1) % size()] - verts_[i]) / edge_len_[i];
}

Vec2 Polygon2D::edge_normal(int i) const {
  const Vec2 t = edge_tangent(i);
  return Vec2(t.y(), -t.x());
}

Vec2 Polygon2D::edge_point(int i, double s) const {
  i = wrap(i);
  return verts_[i] + s * (verts_[(i + 1) % size()] - verts_[i]);
}

double Polygon2D::edge_distance(int i, const Vec2& x) const {
  i = wrap(i);
  return (verts_[i] - x).dot(edge_normal(i));
}

double Polygon2D::boundary_distance(const Vec2& x) const {
  double d = std::numeric_limits<double>::max();
  for (int i = 0; i < size(); ++i) d = std::min(d, edge_distance(i, x));
  return d;
}

}  // namespace polyfe
