#include "polyfe/element3d.hpp"

#include <Eigen/QR>
#include <cmath>
#include <numeric>

#include "polyfe/element2d.hpp"

namespace polyfe {

HdivBasis3D HdivBasis3D::build(const WhitneyForms& forms, const AdjacencyMatrices& adj,
                               std::optional<Vec3> xstar) {
  const Polyhedron& poly = forms.cell();
  const int nf = poly.num_faces();
  const Vec3 x0 = xstar.value_or(poly.vertex_centroid());
  if (poly.boundary_distance(x0) <= 0.0)
    throw DomainError("reference point must lie strictly inside the polyhedron");

  HdivBasis3D basis;
  basis.forms_ = &forms;
  basis.xstar_ = x0;

  const double volume = poly.volume();
  // Pyramid volumes |T_f| from the reference point.
  Eigen::VectorXd pyramid(nf);
  for (int f = 0; f < nf; ++f)
    pyramid(f) = poly.face_distance(f, x0) * poly.face_area(f) / 3.0;

  basis.c0_.resize(nf);
  for (int f = 0; f < nf; ++f) basis.c0_(f) = poly.face_area(f) / (3.0 * volume);

  // Bordered face Gram system: [M^F 1; 1^t 0] [c; mu] = [r; 0]. The Gram
  // matrix has a one-dimensional constant kernel, and every right-hand side
  // below sums to zero, so the bordered system is nonsingular.
  Eigen::MatrixXd bordered = Eigen::MatrixXd::Zero(nf + 1, nf + 1);
  bordered.topLeftCorner(nf, nf) = adj.face_gram.cast<double>();
  bordered.topRightCorner(nf, 1).setOnes();
  bordered.bottomLeftCorner(1, nf).setOnes();
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(bordered);

  basis.coeff_.resize(nf, nf);
  Eigen::VectorXd rhs(nf + 1);
  for (int f = 0; f < nf; ++f) {
    for (int g = 0; g < nf; ++g)
      rhs(g) = (f == g ? poly.face_area(g) : 0.0) - pyramid(g) / volume * poly.face_area(f);
    rhs(nf) = 0.0;
    const Eigen::VectorXd sol = lu.solve(rhs);
    if ((bordered * sol - rhs).norm() > 1e-8 * poly.face_area(f))
      throw std::runtime_error("bordered face system is singular; adjacency is inconsistent");
    basis.coeff_.row(f) = sol.head(nf).transpose();
  }
  return basis;
}

Vec3 HdivBasis3D::eval(int f, const BarycentricEval<3>& bc) const {
  Vec3 v = c0_(f) * (bc.point - xstar_);
  for (int g = 0; g < size(); ++g)
    if (coeff_(f, g) != 0.0) v += coeff_(f, g) * forms_->modified_face_curl(g, bc);
  return v;
}

double HdivBasis3D::divergence(int f) const { return 3.0 * c0_(f); }

HcurlBasis3D HcurlBasis3D::build(const WhitneyForms& forms, const AdjacencyMatrices& adj) {
  const Polyhedron& poly = forms.cell();
  const int nv = poly.num_vertices();
  const int nf = poly.num_faces();
  const int ne = poly.num_edges();

  // Incidence block [A^VtoE A^FtoE] (#E rows), bordered by the two gauge
  // rows sum a = 0 and sum b = 0 that pin its kernel.
  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(ne + 2, nv + nf);
  system.topLeftCorner(ne, nv) = adj.vertex_to_edge.cast<double>();
  system.topRightCorner(ne, nf) = adj.face_to_edge.cast<double>();
  system.block(ne, 0, 1, nv).setOnes();
  system.block(ne + 1, nv, 1, nf).setOnes();
  if (ne + 2 != nv + nf)
    throw std::runtime_error("edge count violates Euler's formula; cannot build the edge basis");

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);

  HcurlBasis3D basis;
  basis.forms_ = &forms;
  basis.vertex_coeff_.resize(ne, nv);
  basis.face_coeff_.resize(ne, nf);

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ne + 2);
  for (int e = 0; e < ne; ++e) {
    rhs.setZero();
    rhs(e) = poly.edge_length(e);
    const Eigen::VectorXd sol = lu.solve(rhs);
    if ((system * sol - rhs).norm() > 1e-8 * poly.edge_length(e))
      throw std::runtime_error("edge-basis system is singular; adjacency is inconsistent");
    basis.vertex_coeff_.row(e) = sol.head(nv).transpose();
    basis.face_coeff_.row(e) = sol.tail(nf).transpose();
  }
  return basis;
}

Vec3 HcurlBasis3D::eval(int e, const BarycentricEval<3>& bc) const {
  Vec3 v = Vec3::Zero();
  for (int i = 0; i < vertex_coeff_.cols(); ++i) v += vertex_coeff_(e, i) * bc.gradients[i];
  for (int f = 0; f < face_coeff_.cols(); ++f)
    if (face_coeff_(e, f) != 0.0) v += face_coeff_(e, f) * forms_->modified_face_form(f, bc);
  return v;
}

Vec3 HcurlBasis3D::curl(int e, const BarycentricEval<3>& bc) const {
  Vec3 v = Vec3::Zero();
  for (int f = 0; f < face_coeff_.cols(); ++f)
    if (face_coeff_(e, f) != 0.0) v += face_coeff_(e, f) * forms_->modified_face_curl(f, bc);
  return v;
}

// ---------------------------------------------------------------------------

std::vector<Vec3> interior_grid(const Polyhedron& poly, int min_points, double margin) {
  Vec3 lo = poly.vertex(0), hi = poly.vertex(0);
  for (const Vec3& v : poly.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const double offset = margin * poly.diameter();

  std::vector<Vec3> pts;
  for (int m = 7; m <= 64; m = m * 2 + 1) {
    pts.clear();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          const Vec3 x = lo + Vec3((i + 0.5) / m * (hi - lo).x(), (j + 0.5) / m * (hi - lo).y(),
                                   (k + 0.5) / m * (hi - lo).z());
          if (poly.boundary_distance(x) > offset) pts.push_back(x);
        }
    if (static_cast<int>(pts.size()) >= min_points) break;
  }
  return pts;
}

std::vector<Vec3> face_samples(const Polyhedron& poly, int f, int min_points, double eps) {
  const Polygon2D facepoly = poly.face_polygon(f);
  const FaceFrame& frame = poly.face_frame(f);
  const double offset = eps * poly.diameter();

  // Grid in the face plane, pulled slightly into the cell.
  std::vector<Vec3> pts;
  for (const Vec2& uv : interior_grid(facepoly, min_points, 0.05))
    pts.push_back(frame.lift(uv) - offset * frame.normal);
  return pts;
}

std::vector<Vec3> edge_samples(const Polyhedron& poly, int e, int npoints, double eps) {
  const Vec3 inward = -(poly.face_normal(poly.left_face(e)) + poly.face_normal(poly.right_face(e))).normalized();
  const double offset = eps * poly.diameter();
  std::vector<Vec3> pts;
  pts.reserve(npoints);
  for (int q = 0; q < npoints; ++q) {
    const double s = (q + 0.5) / npoints;
    pts.push_back(poly.edge_point(e, s) + offset * inward);
  }
  return pts;
}

DualityReport verify_duality(const Polyhedron& poly, const HdivBasis3D& hdiv,
                             const HcurlBasis3D& hcurl, int face_points, int edge_points) {
  DualityReport report;
  const int nf = poly.num_faces();
  const int ne = poly.num_edges();

  // Traces are sampled at two inward offsets and extrapolated to the
  // boundary, cancelling the first-order offset error.
  for (int g = 0; g < nf; ++g) {
    const std::vector<Vec3> near = face_samples(poly, g, face_points, 1e-7);
    const std::vector<Vec3> far = face_samples(poly, g, face_points, 2e-7);
    Eigen::MatrixXd traces(near.size(), nf);
    for (size_t q = 0; q < near.size(); ++q) {
      const BarycentricEval<3> bc1 = wachspress(poly, near[q]);
      const BarycentricEval<3> bc2 = wachspress(poly, far[q]);
      for (int f = 0; f < nf; ++f)
        traces(q, f) =
            (2.0 * hdiv.eval(f, bc1) - hdiv.eval(f, bc2)).dot(poly.face_normal(g));
    }
    for (int f = 0; f < nf; ++f) {
      const double target = (f == g) ? 1.0 : 0.0;
      report.max_face_residual =
          std::max(report.max_face_residual, (traces.col(f).array() - target).abs().maxCoeff());
      const double mean = traces.col(f).mean();
      const double var = (traces.col(f).array() - mean).square().mean();
      report.max_face_spread = std::max(report.max_face_spread, std::sqrt(var));
    }
  }

  for (int d = 0; d < ne; ++d) {
    const std::vector<Vec3> near = edge_samples(poly, d, edge_points, 1e-7);
    const std::vector<Vec3> far = edge_samples(poly, d, edge_points, 2e-7);
    const Vec3 tangent = poly.edge_tangent(d);
    Eigen::MatrixXd traces(near.size(), ne);
    for (size_t q = 0; q < near.size(); ++q) {
      const BarycentricEval<3> bc1 = wachspress(poly, near[q]);
      const BarycentricEval<3> bc2 = wachspress(poly, far[q]);
      for (int e = 0; e < ne; ++e)
        traces(q, e) = (2.0 * hcurl.eval(e, bc1) - hcurl.eval(e, bc2)).dot(tangent);
    }
    for (int e = 0; e < ne; ++e) {
      const double target = (e == d) ? 1.0 : 0.0;
      report.max_edge_residual =
          std::max(report.max_edge_residual, (traces.col(e).array() - target).abs().maxCoeff());
      const double mean = traces.col(e).mean();
      const double var = (traces.col(e).array() - mean).square().mean();
      report.max_edge_spread = std::max(report.max_edge_spread, std::sqrt(var));
    }
  }
  return report;
}

namespace {

double max_pointwise_norm(const Eigen::VectorXd& stacked) {
  double worst = 0.0;
  for (Eigen::Index r = 0; r + 2 < stacked.size(); r += 3)
    worst = std::max(worst, stacked.segment<3>(r).norm());
  return worst;
}

// Least-squares fit of each target column in the span of basis columns;
// returns the max pointwise residual norm and optionally the coefficients.
double fit_residual(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& targets,
                    Eigen::MatrixXd* coeffs = nullptr) {
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
  double worst = 0.0;
  if (coeffs) coeffs->resize(basis.cols(), targets.cols());
  for (int k = 0; k < targets.cols(); ++k) {
    const Eigen::VectorXd c = qr.solve(targets.col(k));
    if (coeffs) coeffs->col(k) = c;
    worst = std::max(worst, max_pointwise_norm(basis * c - targets.col(k)));
  }
  return worst;
}

}  // namespace

ExactnessReport check_exactness(const Polyhedron& poly, const HcurlBasis3D& hcurl,
                                const HdivBasis3D& hdiv, const std::vector<Vec3>& grid) {
  const int nv = poly.num_vertices();
  const int ne = poly.num_edges();
  const int nf = poly.num_faces();
  const int rows = 3 * static_cast<int>(grid.size());

  ExactnessReport report;
  report.num_vertices = nv;
  report.num_edges = ne;
  report.num_faces = nf;

  Eigen::MatrixXd edge_basis(rows, ne), face_basis(rows, nf), gradients(rows, nv), curls(rows, ne);
  for (size_t q = 0; q < grid.size(); ++q) {
    const BarycentricEval<3> bc = wachspress(poly, grid[q]);
    for (int e = 0; e < ne; ++e) {
      edge_basis.col(e).segment<3>(3 * q) = hcurl.eval(e, bc);
      curls.col(e).segment<3>(3 * q) = hcurl.curl(e, bc);
    }
    for (int f = 0; f < nf; ++f) face_basis.col(f).segment<3>(3 * q) = hdiv.eval(f, bc);
    for (int v = 0; v < nv; ++v) gradients.col(v).segment<3>(3 * q) = bc.gradients[v];
  }

  report.rank_hcurl_basis = numeric_rank(edge_basis);
  report.rank_hdiv_basis = numeric_rank(face_basis);
  report.rank_gradients = numeric_rank(gradients);
  report.rank_curls = numeric_rank(curls);

  Eigen::MatrixXd grad_coeffs;
  report.gradient_fit_residual = fit_residual(edge_basis, gradients, &grad_coeffs);
  for (int k = 0; k < grad_coeffs.cols(); ++k)
    report.gradient_fit_curl_residual =
        std::max(report.gradient_fit_curl_residual, max_pointwise_norm(curls * grad_coeffs.col(k)));

  report.curl_fit_residual = fit_residual(face_basis, curls);

  report.min_divergence = std::numeric_limits<double>::max();
  for (int f = 0; f < nf; ++f)
    report.min_divergence = std::min(report.min_divergence, std::abs(hdiv.divergence(f)));
  return report;
}

const char* to_string(PolyhedronType t) {
  switch (t) {
    case PolyhedronType::TypeI: return "TypeI";
    case PolyhedronType::TypeII: return "TypeII";
    default: return "Neither";
  }
}

TypeClassification classify_type(const Polyhedron& poly, std::optional<Vec3> center) {
  TypeClassification c;
  c.center = center.value_or(poly.vertex_centroid());

  bool has_interior = false;
  for (int i = 0; i < poly.num_vertices() && !has_interior; ++i)
    for (int j = 0; j < poly.num_vertices() && !has_interior; ++j)
      if (i != j && poly.segment_class(i, j) == SegmentClass::Interior) has_interior = true;

  for (int i = 0; i < poly.num_vertices(); ++i) {
    Vec3 sum = Vec3::Zero();
    for (int e : poly.vertex_edges(i)) {
      const auto [a, b] = poly.edges()[e];
      const int other = (a == i) ? b : a;
      sum += poly.vertex(other) - poly.vertex(i);
    }
    c.center_residual = std::max(c.center_residual, ((c.center - poly.vertex(i)).cross(sum)).norm());
  }

  const double h = poly.diameter();
  if (!has_interior)
    c.type = PolyhedronType::TypeI;
  else if (c.center_residual < 1e-10 * h * h)
    c.type = PolyhedronType::TypeII;
  else
    c.type = PolyhedronType::Neither;
  return c;
}

double InclusionReport::max_residual() const {
  double m = 0.0;
  for (double r : hcurl_residuals) m = std::max(m, r);
  for (double r : hdiv_residuals) m = std::max(m, r);
  return m;
}

InclusionReport check_p1minus_inclusion(const Polyhedron& poly, const HcurlBasis3D& hcurl,
                                        const HdivBasis3D& hdiv, const std::vector<Vec3>& grid) {
  const int ne = poly.num_edges();
  const int nf = poly.num_faces();
  const int rows = 3 * static_cast<int>(grid.size());

  Eigen::MatrixXd edge_basis(rows, ne), face_basis(rows, nf);
  Eigen::MatrixXd curl_targets(rows, 6), div_targets(rows, 4);
  for (size_t q = 0; q < grid.size(); ++q) {
    const Vec3& x = grid[q];
    const BarycentricEval<3> bc = wachspress(poly, x);
    for (int e = 0; e < ne; ++e) edge_basis.col(e).segment<3>(3 * q) = hcurl.eval(e, bc);
    for (int f = 0; f < nf; ++f) face_basis.col(f).segment<3>(3 * q) = hdiv.eval(f, bc);
    for (int k = 0; k < 3; ++k) {
      const Vec3 unit = Vec3::Unit(k);
      curl_targets.col(k).segment<3>(3 * q) = unit;
      curl_targets.col(3 + k).segment<3>(3 * q) = unit.cross(x);
      div_targets.col(k).segment<3>(3 * q) = unit;
    }
    div_targets.col(3).segment<3>(3 * q) = x;
  }

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> edge_qr(edge_basis);
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> face_qr(face_basis);

  InclusionReport report;
  for (int k = 0; k < curl_targets.cols(); ++k) {
    const Eigen::VectorXd c = edge_qr.solve(curl_targets.col(k));
    report.hcurl_residuals.push_back(max_pointwise_norm(edge_basis * c - curl_targets.col(k)));
  }
  for (int k = 0; k < div_targets.cols(); ++k) {
    const Eigen::VectorXd c = face_qr.solve(div_targets.col(k));
    report.hdiv_residuals.push_back(max_pointwise_norm(face_basis * c - div_targets.col(k)));
  }
  return report;
}

double tangential_trace_residual(const Polyhedron& poly, const WhitneyForms& forms,
                                 const HcurlBasis3D& hcurl, int face_points) {
  double worst = 0.0;
  for (int f = 0; f < poly.num_faces(); ++f) {
    const Vec3& n = poly.face_normal(f);
    const std::vector<Vec3> near = face_samples(poly, f, face_points, 1e-7);
    const std::vector<Vec3> far = face_samples(poly, f, face_points, 2e-7);
    for (size_t q = 0; q < near.size(); ++q) {
      const BarycentricEval<3> bc1 = wachspress(poly, near[q]);
      const BarycentricEval<3> bc2 = wachspress(poly, far[q]);
      for (int e = 0; e < poly.num_edges(); ++e) {
        const Vec3 d1 =
            hcurl.eval(e, bc1) - poly.edge_length(e) * forms.modified_edge_form(e, bc1);
        const Vec3 d2 =
            hcurl.eval(e, bc2) - poly.edge_length(e) * forms.modified_edge_form(e, bc2);
        const Vec3 diff = 2.0 * d1 - d2;
        const Vec3 tangential = diff - diff.dot(n) * n;
        worst = std::max(worst, tangential.norm());
      }
    }
  }
  return worst;
}

TypeIIConstraintReport check_typeII_solvability(const Polyhedron& poly, const Vec3& center,
                                                const Vec3& a) {
  TypeIIConstraintReport report;
  const int ne = poly.num_edges();

  for (int i = 0; i < poly.num_vertices(); ++i) {
    double jump_sum = 0.0;
    for (int e : poly.vertex_edges(i)) {
      const auto [p, q] = poly.edges()[e];
      const int other = (p == i) ? q : p;
      const Vec3 tau = poly.vertex(other) - poly.vertex(i);
      jump_sum += a.cross(poly.vertex(i) - center).dot(tau);
    }
    report.vertex_residuals.push_back(jump_sum);
    report.max_vertex_residual = std::max(report.max_vertex_residual, std::abs(jump_sum));
  }

  // Face coefficients whose jumps across the edges reproduce the edge data.
  const AdjacencyMatrices adj = build_adjacency(poly);
  Eigen::VectorXd rhs(ne);
  for (int e = 0; e < ne; ++e) {
    const auto [i, j] = poly.edges()[e];
    const Vec3 tau = poly.vertex(j) - poly.vertex(i);
    rhs(e) = a.cross(poly.vertex(i) - center).dot(tau);
  }
  const Eigen::MatrixXd system = adj.face_to_edge.cast<double>();
  const Eigen::VectorXd c = system.colPivHouseholderQr().solve(rhs);
  report.reconstruction_residual = (system * c - rhs).cwiseAbs().maxCoeff();
  return report;
}

Element3D::Element3D(Polyhedron poly, std::optional<Vec3> xstar, InteriorCombinations::Policy policy)
    : poly_(std::move(poly)),
      adj_(build_adjacency(poly_)),
      forms_(poly_, std::move(policy)),
      hdiv_(HdivBasis3D::build(forms_, adj_, xstar)),
      hcurl_(HcurlBasis3D::build(forms_, adj_)) {}

bool CellVerification::passed() const {
  const bool base = euler_ok && adjacency_orthogonal && adjacency_kernels_ok &&
                    rank_face_gram == num_faces - 1 && rank_vertex_gram == num_vertices - 1 &&
                    duality.max_face_residual < duality_tol &&
                    duality.max_edge_residual < duality_tol && exactness.dimensions_ok() &&
                    exactness.gradient_fit_residual < fit_tol &&
                    exactness.curl_fit_residual < fit_tol &&
                    tangential_trace < trace_tol;
  // The simplicial-space inclusion is proven only for Type I/II cells; for
  // anything else it is reported but not gated.
  if (type.type == PolyhedronType::Neither) return base;
  return base && inclusion.max_residual() < inclusion_tol;
}

CellVerification verify_cell(const Element3D& elem) {
  const Polyhedron& poly = elem.cell();
  CellVerification v;
  v.num_vertices = poly.num_vertices();
  v.num_edges = poly.num_edges();
  v.num_faces = poly.num_faces();
  v.euler_ok = check_euler(poly);

  const AdjacencyMatrices& adj = elem.adjacency();
  v.adjacency_orthogonal = (adj.face_to_edge.transpose() * adj.vertex_to_edge).isZero(0);
  v.adjacency_kernels_ok = (adj.face_gram.rowwise().sum().isZero(0)) &&
                           (adj.vertex_gram.rowwise().sum().isZero(0));
  v.rank_face_gram = numeric_rank(adj.face_gram.cast<double>());
  v.rank_vertex_gram = numeric_rank(adj.vertex_gram.cast<double>());

  v.type = classify_type(poly);
  v.duality = verify_duality(poly, elem.hdiv(), elem.hcurl());

  const std::vector<Vec3> grid = interior_grid(poly);
  v.exactness = check_exactness(poly, elem.hcurl(), elem.hdiv(), grid);
  v.inclusion = check_p1minus_inclusion(poly, elem.hcurl(), elem.hdiv(), grid);
  v.tangential_trace = tangential_trace_residual(poly, elem.forms(), elem.hcurl());
  v.interior_combination_residual = elem.forms().interior_combinations().max_reconstruction_residual();
  return v;
}

}  // namespace polyfe
