#include "polyfe/quadrature.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace polyfe {

namespace {

GaussRule1D compute_gauss_legendre(int n) {
  GaussRule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  // Newton iteration on the Legendre recurrence; standard symmetric layout.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes(i) = -x;
    rule.nodes(n - 1 - i) = x;
    rule.weights(i) = w;
    rule.weights(n - 1 - i) = w;
  }
  if (n % 2 == 1) rule.nodes(n / 2) = 0.0;
  return rule;
}

}  // namespace

const GaussRule1D& gauss_legendre(int npoints) {
  if (npoints < 1 || npoints > 32)
    throw std::invalid_argument("gauss_legendre: npoints must be in [1, 32]");
  static std::array<GaussRule1D, 33> cache;
  static std::array<std::once_flag, 33> flags;
  std::call_once(flags[npoints], [npoints] { cache[npoints] = compute_gauss_legendre(npoints); });
  return cache[npoints];
}

EdgeRule edge_rule(const Vec2& a, const Vec2& b, int npoints) {
  const GaussRule1D& g = gauss_legendre(npoints);
  EdgeRule rule;
  rule.points.resize(npoints);
  rule.weights.resize(npoints);
  const double half = 0.5 * (b - a).norm();
  for (int q = 0; q < npoints; ++q) {
    const double s = 0.5 * (1.0 + g.nodes(q));
    rule.points[q] = a + s * (b - a);
    rule.weights(q) = half * g.weights(q);
  }
  return rule;
}

PolygonRule::PolygonRule(const Polygon2D& poly, int degree) : degree_(degree) {
  if (degree < min_degree || degree > max_degree)
    throw std::invalid_argument("PolygonRule: unsupported degree " + std::to_string(degree));

  // Collapsed square on the unit triangle: (u, v) -> (u, v (1 - u)) with
  // Jacobian (1 - u). A polynomial of degree d pulls back to degree d + 1
  // in u and d in v, so m Gauss points per direction with 2m - 1 >= d + 1
  // integrate it exactly; all weights stay positive.
  const int m = (degree + 3) / 2;
  const GaussRule1D& g = gauss_legendre(m);

  const Vec2 apex = poly.centroid();
  const int n = poly.size();
  points_.reserve(static_cast<size_t>(n) * m * m);
  std::vector<double> w;
  w.reserve(points_.capacity());

  for (int i = 0; i < n; ++i) {
    const Vec2 a = poly.vertex(i);
    const Vec2 b = poly.vertex(i + 1);
    const double twice_area = cross2(a - apex, b - apex);
    for (int iu = 0; iu < m; ++iu) {
      const double u = 0.5 * (1.0 + g.nodes(iu));
      const double wu = 0.5 * g.weights(iu);
      for (int iv = 0; iv < m; ++iv) {
        const double v = 0.5 * (1.0 + g.nodes(iv));
        const double wv = 0.5 * g.weights(iv);
        const double xi = u;
        const double eta = v * (1.0 - u);
        points_.push_back(apex + xi * (a - apex) + eta * (b - apex));
        w.push_back(wu * wv * (1.0 - u) * twice_area);
      }
    }
  }
  weights_ = Eigen::Map<Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
}

}  // namespace polyfe
