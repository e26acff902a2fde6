#pragma once

#include <functional>
#include <map>
#include <vector>

#include "polyfe/barycentric.hpp"
#include "polyfe/polyhedron.hpp"

namespace polyfe {

/// A linear combination of lowest-order edge forms W_{ij}; terms are stored
/// with i < j, using W_{ji} = -W_{ij} to canonicalize.
struct PairTerm {
  int i, j;
  double coeff;
};
using PairCombination = std::vector<PairTerm>;

/// Expansions of the interior segments at each vertex over the edge
/// directions at that vertex: tau_{ik} = sum_j C^{ik}_{ij} tau_{ij} over
/// edges (i, j). When a vertex has more than three incident edges the
/// expansion is not unique; the policy picks one (default: minimum norm).
class InteriorCombinations {
 public:
  /// Solves columns(dirs) * c = target; must be exact for edge directions
  /// spanning R^3, which convexity guarantees.
  using Policy = std::function<Eigen::VectorXd(const Eigen::Matrix3Xd& dirs, const Vec3& target)>;

  explicit InteriorCombinations(const Polyhedron& poly, Policy policy = {});

  bool empty() const { return table_.empty(); }
  /// Coefficient of edge direction (i -> j) in the expansion of (i -> k).
  double coefficient(int i, int k, int j) const;
  /// Max over interior segments of |sum_j C tau_{ij} - tau_{ik}|.
  double max_reconstruction_residual() const { return max_residual_; }
  /// Directed interior segments (i, k) present in the table.
  std::vector<std::pair<int, int>> segments() const;

 private:
  std::map<std::pair<int, int>, std::map<int, double>> table_;
  double max_residual_ = 0.0;
};

/// Pointwise Whitney 1-form l_i grad l_j - l_j grad l_i.
Vec3 whitney_one_form(const BarycentricEval<3>& bc, int i, int j);
/// Pointwise Whitney 2-form, the alternating sum of l (grad l x grad l).
Vec3 whitney_two_form(const BarycentricEval<3>& bc, int i, int j, int k);

/// Modified edge forms of a polyhedron and their oriented face sums.
///
/// For an edge (i, j), the modified form adds to W_{ij} half of the W's
/// along the face diagonals emanating from i and j inside the two faces
/// sharing the edge, and half of the interior-segment W's weighted by the
/// chosen expansion coefficients. The result has constant tangential trace
/// 1/|e_{ij}| on its own edge and zero on every other edge.
class WhitneyForms {
 public:
  explicit WhitneyForms(const Polyhedron& poly, InteriorCombinations::Policy policy = {});

  const Polyhedron& cell() const { return *poly_; }
  const InteriorCombinations& interior_combinations() const { return interior_; }

  /// Combination for the modified form of edge e (direction as in edges()).
  const PairCombination& edge_terms(int e) const { return edge_terms_[e]; }
  /// Combination for the oriented boundary sum over face f.
  const PairCombination& face_terms(int f) const { return face_terms_[f]; }

  Vec3 modified_edge_form(int e, const BarycentricEval<3>& bc) const;
  Vec3 modified_face_form(int f, const BarycentricEval<3>& bc) const;
  /// Curls are evaluated analytically through curl W_{ij} = 2 grad l_i x grad l_j.
  Vec3 modified_edge_curl(int e, const BarycentricEval<3>& bc) const;
  Vec3 modified_face_curl(int f, const BarycentricEval<3>& bc) const;

  static Vec3 combination_value(const PairCombination& combo, const BarycentricEval<3>& bc);
  static Vec3 combination_curl(const PairCombination& combo, const BarycentricEval<3>& bc);

 private:
  const Polyhedron* poly_;
  InteriorCombinations interior_;
  std::vector<PairCombination> edge_terms_;
  std::vector<PairCombination> face_terms_;
};

/// Residuals of the constant and rotation reproduction identities:
/// the W's over all vertex pairs reproduce a, the modified forms over all
/// edges reproduce 2b, and their moment-weighted sum reproduces 2 a x x.
struct ReproductionResiduals {
  double constant_pairs;     // sum_{i<j} (a . tau_ij) W_ij  vs  a
  double constant_modified;  // sum over directed edges of (b . tau) W~  vs  2b
  double rotation_modified;  // moment-weighted modified sum  vs  2 a x x
};
ReproductionResiduals reproduction_residuals(const WhitneyForms& forms, const Vec3& a,
                                             const Vec3& b, const std::vector<Vec3>& points);

}  // namespace polyfe
