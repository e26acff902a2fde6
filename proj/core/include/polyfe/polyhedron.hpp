#pragma once

#include <array>
#include <vector>

#include "polyfe/geometry.hpp"

namespace polyfe {

/// Classification of the directed segment between two distinct vertices.
enum class SegmentClass {
  Edge,      // coincides with a natural edge
  Face,      // lies on the boundary but is not an edge (a face diagonal)
  Interior,  // passes through the interior
};

/// In-plane orthonormal frame of a face; maps between 3D points on the face
/// plane and local 2D coordinates.
struct FaceFrame {
  Vec3 origin;
  Vec3 u, v;  // orthonormal, u x v = normal
  Vec3 normal;

  Vec2 project(const Vec3& p) const { return Vec2((p - origin).dot(u), (p - origin).dot(v)); }
  Vec3 lift(const Vec2& q) const { return origin + q.x() * u + q.y() * v; }
};

/// Convex polyhedron whose faces are triangles or parallelograms, given as
/// vertex loops oriented outward by the right-hand rule. Construction
/// validates planarity, convexity, face shape, orientation, a closed
/// two-manifold face structure, and Euler's formula; invalid input is
/// rejected with a GeometryError.
///
/// Each undirected edge is assigned the fixed direction from its lower to
/// its higher vertex index; edges() lists them in lexicographic order.
class Polyhedron {
 public:
  Polyhedron(std::vector<Vec3> vertices, std::vector<std::vector<int>> faces);

  int num_vertices() const { return static_cast<int>(verts_.size()); }
  int num_faces() const { return static_cast<int>(faces_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const Vec3& vertex(int i) const { return verts_[i]; }
  const std::vector<Vec3>& vertices() const { return verts_; }
  const std::vector<int>& face(int f) const { return faces_[f]; }

  const Vec3& face_normal(int f) const { return face_normal_[f]; }
  double face_area(int f) const { return face_area_[f]; }
  const Vec3& face_centroid(int f) const { return face_centroid_[f]; }
  const FaceFrame& face_frame(int f) const { return face_frame_[f]; }
  /// The face as a 2D polygon in its own frame (counterclockwise).
  Polygon2D face_polygon(int f) const;

  double volume() const { return volume_; }
  double diameter() const { return diameter_; }
  /// Arithmetic mean of the vertices (always interior for convex cells).
  const Vec3& vertex_centroid() const { return vertex_centroid_; }

  /// Directed edges v_a -> v_b with a < b, lexicographically ordered.
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  double edge_length(int e) const { return edge_len_[e]; }
  Vec3 edge_tangent(int e) const;  // unit, along the fixed direction
  Vec3 edge_point(int e, double s) const;
  /// Index into edges() for the undirected pair {i, j}, or -1.
  int edge_index(int i, int j) const { return edge_of_pair_[i * num_vertices() + j]; }

  /// Face whose oriented boundary traverses edge e along its fixed
  /// direction (left of the edge seen from outside), resp. against it.
  int left_face(int e) const { return left_face_[e]; }
  int right_face(int e) const { return right_face_[e]; }

  /// All vertices of the two faces sharing edge e (no duplicates).
  const std::vector<int>& edge_neighborhood(int e) const { return edge_hood_[e]; }

  /// Edge indices incident to vertex v.
  const std::vector<int>& vertex_edges(int v) const { return vertex_edges_[v]; }

  /// Faces incident to vertex v, ordered counterclockwise around the
  /// outward direction at v (seen from outside the polyhedron).
  const std::vector<int>& vertex_fan(int v) const { return vertex_fan_[v]; }

  SegmentClass segment_class(int i, int j) const;

  /// Signed distance from x to the face-f supporting plane, positive inside.
  double face_distance(int f, const Vec3& x) const;
  double boundary_distance(const Vec3& x) const;
  bool contains(const Vec3& x) const { return boundary_distance(x) >= 0.0; }

 private:
  void build_edges();
  void validate_faces();
  void build_classification();
  void build_vertex_fans();

  std::vector<Vec3> verts_;
  std::vector<std::vector<int>> faces_;

  std::vector<Vec3> face_normal_;
  std::vector<double> face_area_;
  std::vector<Vec3> face_centroid_;
  std::vector<FaceFrame> face_frame_;

  std::vector<std::array<int, 2>> edges_;
  std::vector<double> edge_len_;
  std::vector<int> left_face_, right_face_;
  std::vector<int> edge_of_pair_;  // dense num_vertices^2 lookup
  std::vector<std::vector<int>> edge_hood_;
  std::vector<std::vector<int>> vertex_edges_;
  std::vector<std::vector<int>> vertex_fan_;
  std::vector<SegmentClass> seg_class_;

  double volume_ = 0.0;
  double diameter_ = 0.0;
  Vec3 vertex_centroid_ = Vec3::Zero();
};

/// Classification table over all ordered vertex pairs, as a dense matrix
/// view; entry (i, j), i != j, is the class of the directed segment i -> j.
std::vector<SegmentClass> classify_segments(const Polyhedron& poly);

/// #E == #V + #F - 2.
bool check_euler(const Polyhedron& poly);

}  // namespace polyfe
