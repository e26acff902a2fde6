#include "polyfe/adjacency.hpp"

#include <Eigen/SVD>

namespace polyfe {

AdjacencyMatrices build_adjacency(const Polyhedron& poly) {
  const int ne = poly.num_edges();
  const int nf = poly.num_faces();
  const int nv = poly.num_vertices();

  AdjacencyMatrices adj;
  adj.face_to_edge = Eigen::MatrixXi::Zero(ne, nf);
  adj.vertex_to_edge = Eigen::MatrixXi::Zero(ne, nv);

  for (int e = 0; e < ne; ++e) {
    const auto [a, b] = poly.edges()[e];
    adj.vertex_to_edge(e, a) = -1;
    adj.vertex_to_edge(e, b) = 1;
    adj.face_to_edge(e, poly.left_face(e)) = 1;
    adj.face_to_edge(e, poly.right_face(e)) = -1;
  }

  adj.face_gram = adj.face_to_edge.transpose() * adj.face_to_edge;
  adj.vertex_gram = adj.vertex_to_edge.transpose() * adj.vertex_to_edge;
  return adj;
}

int numeric_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++rank;
  return rank;
}

}  // namespace polyfe
