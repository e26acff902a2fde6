#include "polyfe/element2d.hpp"

#include <cmath>

namespace polyfe {

HdivBasis2D::HdivBasis2D(Polygon2D poly, Vec2 xstar) : poly_(std::move(poly)), xstar_(xstar) {}

HdivBasis2D HdivBasis2D::build(const Polygon2D& poly, std::optional<Vec2> xstar) {
  const Vec2 x0 = xstar.value_or(poly.centroid());
  if (poly.boundary_distance(x0) <= 0.0)
    throw DomainError("reference point must lie strictly inside the polygon");

  HdivBasis2D basis(poly, x0);
  const int n = poly.size();
  const double area = poly.area();

  // Triangle fan areas |T_l| from the reference point.
  Eigen::VectorXd tri(n);
  for (int l = 0; l < n; ++l)
    tri(l) = 0.5 * cross2(poly.vertex(l) - x0, poly.vertex(l + 1) - x0);

  basis.b_.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l)
      basis.b_(i, l) = (i == l ? poly.edge_length(l) : 0.0) - poly.edge_length(i) * tri(l) / area;

  basis.c0_.resize(n);
  basis.c_.resize(n, n);
  for (int i = 0; i < n; ++i) {
    basis.c0_(i) = poly.edge_length(i) / (2.0 * area);
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int l = 1; l <= n - 1; ++l) acc += l * basis.b_(i, (k + l) % n);
      basis.c_(i, k) = -acc / n;
    }
  }
  return basis;
}

double HdivBasis2D::gradient_coefficient(int i, int k) const {
  return c_(poly_.wrap(i), poly_.wrap(k));
}

double HdivBasis2D::b_table(int i, int l) const { return b_(poly_.wrap(i), poly_.wrap(l)); }

Eigen::Matrix2Xd HdivBasis2D::eval_all(const BarycentricEval<2>& bc) const {
  const int n = size();
  Eigen::Matrix2Xd out(2, n);
  const Vec2 radial = bc.point - xstar_;
  for (int i = 0; i < n; ++i) {
    Vec2 v = c0_(i) * radial;
    for (int k = 0; k < n; ++k) v += c_(i, k) * rot90(bc.gradients[k]);
    out.col(i) = v;
  }
  return out;
}

Eigen::Matrix2Xd HdivBasis2D::eval_all(const Vec2& x) const {
  return eval_all(wachspress(poly_, x));
}

Vec2 HdivBasis2D::eval(int i, const Vec2& x) const {
  const BarycentricEval<2> bc = wachspress(poly_, x);
  Vec2 v = c0_(i) * (x - xstar_);
  for (int k = 0; k < size(); ++k) v += c_(i, k) * rot90(bc.gradients[k]);
  return v;
}

double HdivBasis2D::divergence(int i) const {
  // div(x - x_*) = 2 and the rotated gradients are divergence free.
  return 2.0 * c0_(i);
}

Eigen::VectorXd HdivBasis2D::flux_dofs(const std::function<Vec2(const Vec2&)>& q, int npoints) const {
  const int n = size();
  Eigen::VectorXd dofs(n);
  for (int i = 0; i < n; ++i) {
    const Vec2 normal = poly_.edge_normal(i);
    const EdgeRule rule = edge_rule(poly_.vertex(i), poly_.vertex(i + 1), npoints);
    dofs(i) = rule.integrate([&](const Vec2& x) { return q(x).dot(normal); }) / poly_.edge_length(i);
  }
  return dofs;
}

Vec2 HdivBasis2D::interpolate(const Eigen::VectorXd& dofs, const Vec2& x) const {
  return eval_all(x) * dofs;
}

Eigen::VectorXd HdivBasis2D::normal_trace_residuals(int samples_per_edge, double eps) const {
  const int n = size();
  const double offset = eps * poly_.diameter();
  Eigen::VectorXd residuals = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    const Vec2 normal = poly_.edge_normal(j);
    for (int q = 0; q < samples_per_edge; ++q) {
      const Vec2 x = poly_.edge_point(j, (q + 0.5) / samples_per_edge);
      // Extrapolate to the boundary from two offsets; the first-order
      // offset error cancels.
      const Eigen::Matrix2Xd near = eval_all(x - offset * normal);
      const Eigen::Matrix2Xd far = eval_all(x - 2.0 * offset * normal);
      for (int i = 0; i < n; ++i) {
        const double trace = 2.0 * near.col(i).dot(normal) - far.col(i).dot(normal);
        residuals(j) = std::max(residuals(j), std::abs(trace - (i == j ? 1.0 : 0.0)));
      }
    }
  }
  return residuals;
}

double nodal_interpolant(const Polygon2D& poly, const Eigen::VectorXd& vertex_values, const Vec2& x) {
  const BarycentricEval<2> bc = wachspress(poly, x);
  double s = 0.0;
  for (int i = 0; i < poly.size(); ++i) s += vertex_values(i) * bc.values[i];
  return s;
}

Vec2 nodal_interpolant_curl(const Polygon2D& poly, const Eigen::VectorXd& vertex_values, const Vec2& x) {
  const BarycentricEval<2> bc = wachspress(poly, x);
  Vec2 g = Vec2::Zero();
  for (int i = 0; i < poly.size(); ++i) g += vertex_values(i) * bc.gradients[i];
  return rot90(g);
}

double cell_mean(const Polygon2D& poly, const std::function<double(const Vec2&)>& f, int degree) {
  return PolygonRule(poly, degree).integrate(f) / poly.area();
}

Vec2 cell_mean(const Polygon2D& poly, const std::function<Vec2(const Vec2&)>& f, int degree) {
  const PolygonRule rule(poly, degree);
  Vec2 s = Vec2::Zero();
  for (size_t q = 0; q < rule.points().size(); ++q) s += rule.weights()(q) * f(rule.points()[q]);
  return s / poly.area();
}

CommuteResiduals commute_residuals(const HdivBasis2D& basis, const ScalarField& phi,
                                   const FluxField& q, const std::vector<Vec2>& samples) {
  const Polygon2D& poly = basis.cell();
  const int n = basis.size();

  CommuteResiduals res{0.0, 0.0};

  // div (interpolant of q) is constant; compare with the cell mean of div q.
  const Eigen::VectorXd flux = basis.flux_dofs(q.value);
  double div_interp = 0.0;
  for (int i = 0; i < n; ++i) div_interp += flux(i) * basis.divergence(i);
  res.divergence = std::abs(div_interp - cell_mean(poly, q.divergence));

  // Interpolating rot90(grad phi) must reproduce rot90(grad of the nodal
  // interpolant) pointwise.
  const Eigen::VectorXd curl_flux =
      basis.flux_dofs([&phi](const Vec2& x) { return rot90(phi.gradient(x)); });
  Eigen::VectorXd vertex_values(n);
  for (int i = 0; i < n; ++i) vertex_values(i) = phi.value(poly.vertex(i));
  for (const Vec2& x : samples) {
    const Vec2 lhs = basis.interpolate(curl_flux, x);
    const Vec2 rhs = nodal_interpolant_curl(poly, vertex_values, x);
    res.curl = std::max(res.curl, (lhs - rhs).norm());
  }
  return res;
}

std::vector<Vec2> interior_grid(const Polygon2D& poly, int min_points, double margin) {
  Vec2 lo = poly.vertex(0), hi = poly.vertex(0);
  for (const Vec2& v : poly.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const double offset = margin * poly.diameter();

  std::vector<Vec2> pts;
  for (int m = 16; m <= 1024; m *= 2) {
    pts.clear();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const Vec2 x = lo + Vec2((i + 0.5) / m * (hi - lo).x(), (j + 0.5) / m * (hi - lo).y());
        if (poly.boundary_distance(x) > offset) pts.push_back(x);
      }
    if (static_cast<int>(pts.size()) >= min_points) break;
  }
  return pts;
}

}  // namespace polyfe
