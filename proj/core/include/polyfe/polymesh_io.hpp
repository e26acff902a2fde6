#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "polyfe/mesh2d.hpp"
#include "polyfe/polyhedron.hpp"

namespace polyfe {

/// Line-oriented text format for polygonal meshes and polytopes.
///
///   POLYMESH 2                      POLYMESH 3
///   <nv>                            <nv>
///   x y          (nv lines)        x y z        (nv lines)
///   <ncells>                        <ncells>
///   <k> i0 ... i{k-1}  (per cell)   <nfaces>              (per cell)
///                                   <k> i0 ... i{k-1}     (per face)
///
/// Vertex indices are 0-based; 2D cell loops are counterclockwise; 3D face
/// loops are oriented outward by the right-hand rule. Blank lines and lines
/// starting with '#' are skipped. Parse errors throw IoError with the
/// offending line number.
struct PolyMeshFile {
  int dimension = 0;
  std::optional<Mesh2D> mesh;        // when dimension == 2
  std::vector<Polyhedron> cells;     // when dimension == 3
};

PolyMeshFile read_polymesh(std::istream& in);
PolyMeshFile read_polymesh(const std::filesystem::path& path);

void write_polymesh(std::ostream& out, const Mesh2D& mesh);
void write_polymesh(std::ostream& out, const std::vector<Polyhedron>& cells);
void write_polymesh(const std::filesystem::path& path, const Mesh2D& mesh);
void write_polymesh(const std::filesystem::path& path, const std::vector<Polyhedron>& cells);

}  // namespace polyfe
