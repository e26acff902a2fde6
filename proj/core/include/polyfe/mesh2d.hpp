#pragma once

#include <vector>

#include "polyfe/geometry.hpp"

namespace polyfe {

/// Global edge of a 2D mesh. The fixed direction runs from the lower to the
/// higher vertex index; sign[k] is +1 when cell k traverses the edge along
/// that direction (so its outward normal matches the global edge normal).
struct MeshEdge {
  int v0 = -1, v1 = -1;
  int cells = 0;
  int cell[2] = {-1, -1};
  int local_edge[2] = {-1, -1};
  int sign[2] = {0, 0};

  bool boundary() const { return cells == 1; }
};

/// Conforming mesh of convex polygonal cells over a shared vertex table.
/// Construction derives the edge table and validates that every cell is
/// convex and counterclockwise and that interior edges are shared by
/// exactly two cells with opposite orientation signs.
class Mesh2D {
 public:
  Mesh2D(std::vector<Vec2> vertices, std::vector<std::vector<int>> cells);

  int num_vertices() const { return static_cast<int>(verts_.size()); }
  int num_cells() const { return static_cast<int>(cells_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const Vec2& vertex(int i) const { return verts_[i]; }
  const std::vector<Vec2>& vertices() const { return verts_; }
  const std::vector<int>& cell(int c) const { return cells_[c]; }
  const Polygon2D& cell_polygon(int c) const { return polygons_[c]; }
  const MeshEdge& edge(int e) const { return edges_[e]; }
  const std::vector<MeshEdge>& edges() const { return edges_; }

  /// Global edge id of local edge `le` of cell c, and its orientation sign.
  int cell_edge(int c, int le) const { return cell_edges_[c][le]; }
  int cell_edge_sign(int c, int le) const { return cell_edge_signs_[c][le]; }

  double total_area() const;
  double max_diameter() const;

 private:
  std::vector<Vec2> verts_;
  std::vector<std::vector<int>> cells_;
  std::vector<Polygon2D> polygons_;
  std::vector<MeshEdge> edges_;
  std::vector<std::vector<int>> cell_edges_;
  std::vector<std::vector<int>> cell_edge_signs_;
};

}  // namespace polyfe
