#include "polyfe/mesh2d.hpp"

#include <map>

namespace polyfe {

Mesh2D::Mesh2D(std::vector<Vec2> vertices, std::vector<std::vector<int>> cells)
    : verts_(std::move(vertices)), cells_(std::move(cells)) {
  const int nv = num_vertices();

  polygons_.reserve(cells_.size());
  for (size_t c = 0; c < cells_.size(); ++c) {
    const auto& loop = cells_[c];
    if (loop.size() < 3) throw GeometryError("cell " + std::to_string(c) + " has fewer than 3 vertices");
    std::vector<Vec2> pts;
    pts.reserve(loop.size());
    for (int v : loop) {
      if (v < 0 || v >= nv)
        throw GeometryError("cell " + std::to_string(c) + " references vertex out of range");
      pts.push_back(verts_[v]);
    }
    try {
      polygons_.emplace_back(std::move(pts));
    } catch (const GeometryError& err) {
      throw GeometryError("cell " + std::to_string(c) + ": " + err.what());
    }
  }

  std::map<std::pair<int, int>, int> edge_ids;
  cell_edges_.resize(cells_.size());
  cell_edge_signs_.resize(cells_.size());
  for (size_t c = 0; c < cells_.size(); ++c) {
    const auto& loop = cells_[c];
    const int k = static_cast<int>(loop.size());
    cell_edges_[c].resize(k);
    cell_edge_signs_[c].resize(k);
    for (int le = 0; le < k; ++le) {
      const int a = loop[le];
      const int b = loop[(le + 1) % k];
      const auto key = std::minmax(a, b);
      auto [it, inserted] = edge_ids.insert({key, static_cast<int>(edges_.size())});
      if (inserted) {
        MeshEdge e;
        e.v0 = key.first;
        e.v1 = key.second;
        edges_.push_back(e);
      }
      MeshEdge& e = edges_[it->second];
      if (e.cells >= 2)
        throw GeometryError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                            ") is shared by more than two cells");
      e.cell[e.cells] = static_cast<int>(c);
      e.local_edge[e.cells] = le;
      e.sign[e.cells] = (a == e.v0) ? 1 : -1;
      ++e.cells;
      cell_edges_[c][le] = it->second;
      cell_edge_signs_[c][le] = (a == e.v0) ? 1 : -1;
    }
  }

  for (size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].cells == 2 && edges_[e].sign[0] == edges_[e].sign[1])
      throw GeometryError("interior edge " + std::to_string(e) +
                          " is traversed in the same direction by both cells");
  }
}

double Mesh2D::total_area() const {
  double a = 0.0;
  for (const Polygon2D& p : polygons_) a += p.area();
  return a;
}

double Mesh2D::max_diameter() const {
  double h = 0.0;
  for (const Polygon2D& p : polygons_) h = std::max(h, p.diameter());
  return h;
}

}  // namespace polyfe
