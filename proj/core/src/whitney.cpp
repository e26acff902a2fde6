#include "polyfe/whitney.hpp"

#include <algorithm>

namespace polyfe {

namespace {

void add_term(PairCombination& combo, int i, int j, double coeff) {
  if (i == j || coeff == 0.0) return;
  if (i < j)
    combo.push_back({i, j, coeff});
  else
    combo.push_back({j, i, -coeff});
}

void merge_terms(PairCombination& combo) {
  std::sort(combo.begin(), combo.end(), [](const PairTerm& a, const PairTerm& b) {
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });
  PairCombination merged;
  for (const PairTerm& t : combo) {
    if (!merged.empty() && merged.back().i == t.i && merged.back().j == t.j)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(t);
  }
  std::erase_if(merged, [](const PairTerm& t) { return t.coeff == 0.0; });
  combo = std::move(merged);
}

}  // namespace

InteriorCombinations::InteriorCombinations(const Polyhedron& poly, Policy policy) {
  if (!policy)
    policy = [](const Eigen::Matrix3Xd& dirs, const Vec3& target) {
      return dirs.completeOrthogonalDecomposition().solve(target).eval();
    };

  const int nv = poly.num_vertices();
  for (int i = 0; i < nv; ++i) {
    // Edge directions at vertex i, with the neighbor they point to.
    std::vector<int> neighbors;
    for (int e : poly.vertex_edges(i)) {
      const auto [a, b] = poly.edges()[e];
      neighbors.push_back(a == i ? b : a);
    }
    Eigen::Matrix3Xd dirs(3, neighbors.size());
    for (size_t m = 0; m < neighbors.size(); ++m)
      dirs.col(m) = poly.vertex(neighbors[m]) - poly.vertex(i);

    for (int k = 0; k < nv; ++k) {
      if (k == i || poly.segment_class(i, k) != SegmentClass::Interior) continue;
      const Vec3 target = poly.vertex(k) - poly.vertex(i);
      const Eigen::VectorXd c = policy(dirs, target);
      if (c.size() != static_cast<Eigen::Index>(neighbors.size()))
        throw std::invalid_argument("interior combination policy returned a wrong-sized vector");
      max_residual_ = std::max(max_residual_, (dirs * c - target).norm());
      std::map<int, double> row;
      for (size_t m = 0; m < neighbors.size(); ++m) row[neighbors[m]] = c(m);
      table_[{i, k}] = std::move(row);
    }
  }
}

double InteriorCombinations::coefficient(int i, int k, int j) const {
  const auto it = table_.find({i, k});
  if (it == table_.end()) throw std::invalid_argument("segment is not an interior segment");
  const auto jt = it->second.find(j);
  return jt == it->second.end() ? 0.0 : jt->second;
}

std::vector<std::pair<int, int>> InteriorCombinations::segments() const {
  std::vector<std::pair<int, int>> keys;
  keys.reserve(table_.size());
  for (const auto& [key, row] : table_) keys.push_back(key);
  return keys;
}

Vec3 whitney_one_form(const BarycentricEval<3>& bc, int i, int j) {
  return bc.values[i] * bc.gradients[j] - bc.values[j] * bc.gradients[i];
}

Vec3 whitney_two_form(const BarycentricEval<3>& bc, int i, int j, int k) {
  return bc.values[i] * bc.gradients[j].cross(bc.gradients[k]) +
         bc.values[j] * bc.gradients[k].cross(bc.gradients[i]) +
         bc.values[k] * bc.gradients[i].cross(bc.gradients[j]);
}

WhitneyForms::WhitneyForms(const Polyhedron& poly, InteriorCombinations::Policy policy)
    : poly_(&poly), interior_(poly, std::move(policy)) {
  const int nv = poly.num_vertices();
  const int ne = poly.num_edges();

  edge_terms_.resize(ne);
  for (int e = 0; e < ne; ++e) {
    const auto [i, j] = poly.edges()[e];
    PairCombination combo;
    add_term(combo, i, j, 1.0);

    // Surface part: half of the face-diagonal forms leaving i and arriving
    // at j within the two faces sharing the edge.
    for (int k : poly.edge_neighborhood(e)) {
      if (k == i || k == j) continue;
      if (poly.segment_class(i, k) == SegmentClass::Face) add_term(combo, i, k, 0.5);
      if (poly.segment_class(j, k) == SegmentClass::Face) add_term(combo, j, k, -0.5);
    }

    // Interior part, weighted by the chosen expansion coefficients.
    for (int k = 0; k < nv; ++k) {
      if (k != i && poly.segment_class(i, k) == SegmentClass::Interior)
        add_term(combo, i, k, 0.5 * interior_.coefficient(i, k, j));
      if (k != j && poly.segment_class(j, k) == SegmentClass::Interior)
        add_term(combo, j, k, -0.5 * interior_.coefficient(j, k, i));
    }

    merge_terms(combo);
    edge_terms_[e] = std::move(combo);
  }

  face_terms_.resize(poly.num_faces());
  for (int f = 0; f < poly.num_faces(); ++f) {
    const auto& loop = poly.face(f);
    const int k = static_cast<int>(loop.size());
    PairCombination combo;
    for (int m = 0; m < k; ++m) {
      const int a = loop[m];
      const int b = loop[(m + 1) % k];
      const int e = poly.edge_index(a, b);
      const double sign = (poly.edges()[e][0] == a) ? 1.0 : -1.0;
      for (const PairTerm& t : edge_terms_[e]) combo.push_back({t.i, t.j, sign * t.coeff});
    }
    merge_terms(combo);
    face_terms_[f] = std::move(combo);
  }
}

Vec3 WhitneyForms::combination_value(const PairCombination& combo, const BarycentricEval<3>& bc) {
  Vec3 v = Vec3::Zero();
  for (const PairTerm& t : combo) v += t.coeff * whitney_one_form(bc, t.i, t.j);
  return v;
}

Vec3 WhitneyForms::combination_curl(const PairCombination& combo, const BarycentricEval<3>& bc) {
  Vec3 v = Vec3::Zero();
  for (const PairTerm& t : combo)
    v += 2.0 * t.coeff * bc.gradients[t.i].cross(bc.gradients[t.j]);
  return v;
}

Vec3 WhitneyForms::modified_edge_form(int e, const BarycentricEval<3>& bc) const {
  return combination_value(edge_terms_[e], bc);
}

Vec3 WhitneyForms::modified_face_form(int f, const BarycentricEval<3>& bc) const {
  return combination_value(face_terms_[f], bc);
}

Vec3 WhitneyForms::modified_edge_curl(int e, const BarycentricEval<3>& bc) const {
  return combination_curl(edge_terms_[e], bc);
}

Vec3 WhitneyForms::modified_face_curl(int f, const BarycentricEval<3>& bc) const {
  return combination_curl(face_terms_[f], bc);
}

ReproductionResiduals reproduction_residuals(const WhitneyForms& forms, const Vec3& a,
                                             const Vec3& b, const std::vector<Vec3>& points) {
  const Polyhedron& poly = forms.cell();
  const int nv = poly.num_vertices();

  ReproductionResiduals res{0.0, 0.0, 0.0};
  for (const Vec3& x : points) {
    const BarycentricEval<3> bc = wachspress(poly, x);

    Vec3 sum_pairs = Vec3::Zero();
    for (int i = 0; i < nv; ++i)
      for (int j = i + 1; j < nv; ++j) {
        const Vec3 tau = poly.vertex(j) - poly.vertex(i);
        sum_pairs += a.dot(tau) * whitney_one_form(bc, i, j);
      }
    res.constant_pairs = std::max(res.constant_pairs, (sum_pairs - a).norm());

    // Sums over all directed edges equal twice the sums over the fixed
    // directions, because value and weight flip sign together.
    Vec3 sum_const = Vec3::Zero();
    Vec3 sum_rot = Vec3::Zero();
    for (int e = 0; e < poly.num_edges(); ++e) {
      const auto [i, j] = poly.edges()[e];
      const Vec3 tau = poly.vertex(j) - poly.vertex(i);
      const Vec3 w = forms.modified_edge_form(e, bc);
      sum_const += 2.0 * b.dot(tau) * w;
      sum_rot += 2.0 * (a.cross(poly.vertex(i)).dot(tau)) * w;
    }
    res.constant_modified = std::max(res.constant_modified, (sum_const - 2.0 * b).norm());
    res.rotation_modified = std::max(res.rotation_modified, (sum_rot - 2.0 * a.cross(x)).norm());
  }
  return res;
}

}  // namespace polyfe
