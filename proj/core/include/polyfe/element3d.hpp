#pragma once

#include <Eigen/Dense>
#include <optional>

#include "polyfe/adjacency.hpp"
#include "polyfe/whitney.hpp"

namespace polyfe {

/// Minimal H(div) element on a convex polyhedron: one basis function per
/// face with unit constant normal trace on its own face and zero on the
/// others,
///   q_f = c_{f,0} (x - x_*) + sum_g c_{f,g} curl W~_g,  c_{f,0} = |f| / (3|T|).
/// The curl coefficients solve the face Gram system M^F c = r with
/// r_g = delta_{fg} |g| - (|T_g| / |T|) |f|, made square by bordering with
/// the constant kernel vector.
///
/// Holds a reference to the WhitneyForms it was built from.
class HdivBasis3D {
 public:
  static HdivBasis3D build(const WhitneyForms& forms, const AdjacencyMatrices& adj,
                           std::optional<Vec3> xstar = std::nullopt);

  int size() const { return static_cast<int>(coeff_.rows()); }
  const Vec3& reference_point() const { return xstar_; }
  double radial_coefficient(int f) const { return c0_(f); }
  const Eigen::MatrixXd& curl_coefficients() const { return coeff_; }

  Vec3 eval(int f, const BarycentricEval<3>& bc) const;
  /// Constant over the cell: |f| / |T|.
  double divergence(int f) const;

 private:
  const WhitneyForms* forms_ = nullptr;
  Vec3 xstar_ = Vec3::Zero();
  Eigen::VectorXd c0_;
  Eigen::MatrixXd coeff_;  // row f: coefficients over curl W~_g
};

/// Minimal H(curl) element: one basis function per edge with unit constant
/// tangential trace on its own edge and zero on the others,
///   p_e = sum_i a_{e,i} grad l_i + sum_f b_{e,f} W~_f.
/// The coefficients solve the incidence system
///   -a_{start} + a_{end} + b_{left} - b_{right} = delta_{e,e'} |e'|
/// over all fixed-direction edges e', bordered by the two constant kernel
/// vectors (gauges sum a = 0 and sum b = 0).
class HcurlBasis3D {
 public:
  static HcurlBasis3D build(const WhitneyForms& forms, const AdjacencyMatrices& adj);

  int size() const { return static_cast<int>(vertex_coeff_.rows()); }
  const Eigen::MatrixXd& vertex_coefficients() const { return vertex_coeff_; }  // a_{e,i}
  const Eigen::MatrixXd& face_coefficients() const { return face_coeff_; }      // b_{e,f}

  Vec3 eval(int e, const BarycentricEval<3>& bc) const;
  /// Analytic curl: the gradient part drops, the face part curls.
  Vec3 curl(int e, const BarycentricEval<3>& bc) const;

 private:
  const WhitneyForms* forms_ = nullptr;
  Eigen::MatrixXd vertex_coeff_;
  Eigen::MatrixXd face_coeff_;
};

// ---------------------------------------------------------------------------
// Verification utilities
// ---------------------------------------------------------------------------

/// Deterministic tensor grid clipped to the strict interior of the cell.
std::vector<Vec3> interior_grid(const Polyhedron& poly, int min_points = 200, double margin = 1e-3);

/// Sample points on face f, offset into the interior by eps * diameter.
std::vector<Vec3> face_samples(const Polyhedron& poly, int f, int min_points = 20,
                               double eps = 1e-7);
/// Sample points along edge e, offset into the interior by eps * diameter.
std::vector<Vec3> edge_samples(const Polyhedron& poly, int e, int npoints = 5, double eps = 1e-7);

/// Max deviation of the normal and tangential traces from the Kronecker
/// delta, over offset samples, plus the spread of each trace along its
/// face/edge (they must be constant).
struct DualityReport {
  double max_face_residual = 0.0;   // |q_f . n_g - delta_fg|
  double max_edge_residual = 0.0;   // |p_e . t_d - delta_ed|
  double max_face_spread = 0.0;     // max over (f, g) of stddev of q_f . n_g
  double max_edge_spread = 0.0;
};
DualityReport verify_duality(const Polyhedron& poly, const HdivBasis3D& hdiv,
                             const HcurlBasis3D& hcurl, int face_points = 20, int edge_points = 5);

/// Dimension and inclusion checks of the discrete sequence on a point grid:
/// numerical ranks of the sampled bases, of the coordinate gradients and of
/// the basis curls, plus least-squares fit residuals for grad MLambda0 in
/// MLambda1 and curl MLambda1 in MLambda2.
struct ExactnessReport {
  int num_vertices = 0, num_edges = 0, num_faces = 0;
  int rank_hcurl_basis = 0;  // expected #E
  int rank_hdiv_basis = 0;   // expected #F
  int rank_gradients = 0;    // expected #V - 1
  int rank_curls = 0;        // expected #F - 1
  double gradient_fit_residual = 0.0;       // grad l_i fitted in the edge basis
  double gradient_fit_curl_residual = 0.0;  // curl of those fits (exactness)
  double curl_fit_residual = 0.0;           // curl p_e fitted in the face basis
  double min_divergence = 0.0;              // min_f |f| / |T| (onto R)

  bool dimensions_ok() const {
    return rank_hcurl_basis == num_edges && rank_hdiv_basis == num_faces &&
           rank_gradients == num_vertices - 1 && rank_curls == num_faces - 1;
  }
};
ExactnessReport check_exactness(const Polyhedron& poly, const HcurlBasis3D& hcurl,
                                const HdivBasis3D& hdiv, const std::vector<Vec3>& grid);

enum class PolyhedronType { TypeI, TypeII, Neither };
const char* to_string(PolyhedronType t);

/// Type I: no interior segments. Type II: some center x_c has, for every
/// vertex, (x_c - v_i) x (sum of edge directions at v_i) = 0. The default
/// candidate center is the vertex centroid.
struct TypeClassification {
  PolyhedronType type = PolyhedronType::Neither;
  Vec3 center = Vec3::Zero();
  double center_residual = 0.0;  // max over vertices of the cross-product norm
};
TypeClassification classify_type(const Polyhedron& poly, std::optional<Vec3> center = std::nullopt);

/// Least-squares fit residuals of the lowest-order simplicial generators:
/// constants and a x x in the edge space, constants and x in the face space.
struct InclusionReport {
  std::vector<double> hcurl_residuals;  // e1, e2, e3, e1 x x, e2 x x, e3 x x
  std::vector<double> hdiv_residuals;   // e1, e2, e3, x
  double max_residual() const;
};
InclusionReport check_p1minus_inclusion(const Polyhedron& poly, const HcurlBasis3D& hcurl,
                                        const HdivBasis3D& hdiv, const std::vector<Vec3>& grid);

/// Max over faces and offset samples of the in-face difference between
/// p_e and |e| W~_e; the two must share boundary tangential components.
double tangential_trace_residual(const Polyhedron& poly, const WhitneyForms& forms,
                                 const HcurlBasis3D& hcurl, int face_points = 20);

/// Compatibility of the rotation field a x (x - x_c) with the face-sum
/// construction: per-vertex jump sums and, when they vanish, the residual of
/// the face-coefficient system solved by least squares.
struct TypeIIConstraintReport {
  std::vector<double> vertex_residuals;
  double max_vertex_residual = 0.0;
  double reconstruction_residual = 0.0;
};
TypeIIConstraintReport check_typeII_solvability(const Polyhedron& poly, const Vec3& center,
                                                const Vec3& a);

/// Everything the verification CLI and the acceptance suite need for one
/// cell, bundled: owns the forms, adjacency, and both bases.
class Element3D {
 public:
  explicit Element3D(Polyhedron poly, std::optional<Vec3> xstar = std::nullopt,
                     InteriorCombinations::Policy policy = {});

  // The bases keep references into the bundle; pin the object in place.
  Element3D(const Element3D&) = delete;
  Element3D& operator=(const Element3D&) = delete;

  const Polyhedron& cell() const { return poly_; }
  const WhitneyForms& forms() const { return forms_; }
  const AdjacencyMatrices& adjacency() const { return adj_; }
  const HdivBasis3D& hdiv() const { return hdiv_; }
  const HcurlBasis3D& hcurl() const { return hcurl_; }

 private:
  Polyhedron poly_;
  AdjacencyMatrices adj_;
  WhitneyForms forms_;
  HdivBasis3D hdiv_;
  HcurlBasis3D hcurl_;
};

/// Full verification report for one cell with the documented tolerances.
struct CellVerification {
  int num_vertices = 0, num_edges = 0, num_faces = 0;
  bool euler_ok = false;
  bool adjacency_orthogonal = false;  // (A^FtoE)^t A^VtoE == 0, exactly
  bool adjacency_kernels_ok = false;  // M^F 1 == 0 and M^V 1 == 0, exactly
  int rank_face_gram = 0;             // expected #F - 1
  int rank_vertex_gram = 0;           // expected #V - 1
  TypeClassification type;
  DualityReport duality;
  ExactnessReport exactness;
  InclusionReport inclusion;
  double tangential_trace = 0.0;
  double interior_combination_residual = 0.0;

  static constexpr double duality_tol = 1e-4;
  static constexpr double fit_tol = 1e-6;
  static constexpr double inclusion_tol = 1e-4;
  static constexpr double trace_tol = 1e-4;

  bool passed() const;
};
CellVerification verify_cell(const Element3D& elem);

}  // namespace polyfe
