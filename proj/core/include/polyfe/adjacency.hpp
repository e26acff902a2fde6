#pragma once

#include <Eigen/Dense>

#include "polyfe/polyhedron.hpp"

namespace polyfe {

/// Signed incidence matrices of a polyhedron and their Gram products.
///
/// face_to_edge (#E x #F): +1 if the directed edge lies on the oriented face
/// boundary, -1 if its reverse does, 0 otherwise.
/// vertex_to_edge (#E x #V): -1 at the edge's start vertex, +1 at its end.
/// face_gram = face_to_edge^t face_to_edge, vertex_gram likewise; both have
/// a one-dimensional kernel spanned by the constant vector.
struct AdjacencyMatrices {
  Eigen::MatrixXi face_to_edge;
  Eigen::MatrixXi vertex_to_edge;
  Eigen::MatrixXi face_gram;
  Eigen::MatrixXi vertex_gram;
};

AdjacencyMatrices build_adjacency(const Polyhedron& poly);

/// Rank with singular values below rel_tol * sigma_max counted as zero.
int numeric_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-10);

}  // namespace polyfe
