#include "polyfe/barycentric.hpp"

#include <cmath>
#include <stdexcept>

namespace polyfe {

BarycentricEval<2> wachspress(const Polygon2D& poly, const Vec2& x) {
  const int n = poly.size();
  const double cutoff = 1e-14 * poly.diameter();

  // p_i = n_i / h_i, the outward edge normal scaled by the inverse distance
  // to the edge line. Differentiating h_i gives  d p_i = (p_i p_i^t) dx.
  std::vector<Vec2> p(n);
  for (int i = 0; i < n; ++i) {
    const double h = poly.edge_distance(i, x);
    if (h < -cutoff) throw DomainError("point is outside the polygon");
    if (h <= cutoff)
      throw DomainError("point is on or too close to the polygon boundary; use edge_trace");
    p[i] = poly.edge_normal(i) / h;
  }

  BarycentricEval<2> eval;
  eval.point = x;
  eval.values.resize(n);
  eval.gradients.resize(n);

  std::vector<Vec2> grad_w(n);
  double total = 0.0;
  Vec2 grad_total = Vec2::Zero();
  for (int i = 0; i < n; ++i) {
    const Vec2& prev = p[(i + n - 1) % n];
    const double w = cross2(prev, p[i]);
    eval.values[i] = w;
    grad_w[i] = w * (prev + p[i]);
    total += w;
    grad_total += grad_w[i];
  }

  for (int i = 0; i < n; ++i) {
    eval.values[i] /= total;
    eval.gradients[i] = (grad_w[i] - eval.values[i] * grad_total) / total;
  }
  return eval;
}

BarycentricEval<3> wachspress(const Polyhedron& poly, const Vec3& x) {
  const int nv = poly.num_vertices();
  const int nf = poly.num_faces();
  const double cutoff = 1e-14 * poly.diameter();

  std::vector<Vec3> p(nf);
  for (int f = 0; f < nf; ++f) {
    const double h = poly.face_distance(f, x);
    if (h < -cutoff) throw DomainError("point is outside the polyhedron");
    if (h <= cutoff) throw DomainError("point is on or too close to the polyhedron boundary");
    p[f] = poly.face_normal(f) / h;
  }

  BarycentricEval<3> eval;
  eval.point = x;
  eval.values.resize(nv);
  eval.gradients.resize(nv);

  // Per-vertex weight: fan the ordered incident faces from the first one;
  // each determinant d contributes d * (sum of its three p's) to the
  // gradient, since d det/dx = det * (p_a + p_b + p_c).
  std::vector<Vec3> grad_w(nv);
  double total = 0.0;
  Vec3 grad_total = Vec3::Zero();
  for (int v = 0; v < nv; ++v) {
    const auto& fan = poly.vertex_fan(v);
    double w = 0.0;
    Vec3 gw = Vec3::Zero();
    const Vec3& p0 = p[fan[0]];
    for (size_t m = 1; m + 1 < fan.size(); ++m) {
      const Vec3& pa = p[fan[m]];
      const Vec3& pb = p[fan[m + 1]];
      const double det = p0.dot(pa.cross(pb));
      w += det;
      gw += det * (p0 + pa + pb);
    }
    eval.values[v] = w;
    grad_w[v] = gw;
    total += w;
    grad_total += gw;
  }

  for (int v = 0; v < nv; ++v) {
    eval.values[v] /= total;
    eval.gradients[v] = (grad_w[v] - eval.values[v] * grad_total) / total;
  }
  return eval;
}

std::vector<double> edge_trace(const Polygon2D& poly, int edge, double s) {
  if (s < 0.0 || s > 1.0) throw std::invalid_argument("edge_trace: parameter outside [0, 1]");
  const int n = poly.size();
  std::vector<double> values(n, 0.0);
  values[poly.wrap(edge)] = 1.0 - s;
  values[poly.wrap(edge + 1)] = s;
  return values;
}

std::vector<double> cross_product_residuals(const Polygon2D& poly, const Vec2& x) {
  const int n = poly.size();
  const BarycentricEval<2> eval = wachspress(poly, x);
  const auto det = [&eval](int i, int j) { return cross2(eval.gradients[i], eval.gradients[j]); };

  if (n == 3) {
    const double target = 1.0 / (2.0 * poly.area());
    return {det(0, 1) - target, det(1, 2) - target, det(2, 0) - target};
  }
  if (n == 4) {
    const Vec2 gap = poly.vertex(0) - poly.vertex(1) + poly.vertex(2) - poly.vertex(3);
    if (gap.norm() > 1e-12 * poly.diameter())
      throw GeometryError("cross_product_residuals: quadrilateral is not a parallelogram");
    const double target = 1.0 / poly.area();
    return {det(0, 1) + det(2, 3) - target, det(1, 2) + det(3, 0) - target};
  }
  throw GeometryError("cross_product_residuals: face must be a triangle or a parallelogram");
}

}  // namespace polyfe
