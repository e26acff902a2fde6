#include "polyfe/polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace polyfe {

namespace {

// Newell's formula: area-weighted normal of a (nearly) planar loop.
Vec3 loop_normal(const std::vector<Vec3>& verts, const std::vector<int>& loop) {
  Vec3 n = Vec3::Zero();
  const int k = static_cast<int>(loop.size());
  for (int i = 0; i < k; ++i) {
    const Vec3& a = verts[loop[i]];
    const Vec3& b = verts[loop[(i + 1) % k]];
    n += a.cross(b);
  }
  return 0.5 * n;
}

}  // namespace

Polyhedron::Polyhedron(std::vector<Vec3> vertices, std::vector<std::vector<int>> faces)
    : verts_(std::move(vertices)), faces_(std::move(faces)) {
  const int nv = num_vertices();
  if (nv < 4) throw GeometryError("polyhedron needs at least 4 vertices");
  if (num_faces() < 4) throw GeometryError("polyhedron needs at least 4 faces");
  for (const auto& loop : faces_) {
    if (loop.size() < 3) throw GeometryError("face with fewer than 3 vertices");
    for (int v : loop)
      if (v < 0 || v >= nv) throw GeometryError("face references vertex " + std::to_string(v) + " out of range");
  }

  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j)
      diameter_ = std::max(diameter_, (verts_[i] - verts_[j]).norm());
  if (diameter_ <= 0.0) throw GeometryError("degenerate polyhedron: zero diameter");

  for (const Vec3& v : verts_) vertex_centroid_ += v;
  vertex_centroid_ /= nv;

  validate_faces();
  build_edges();

  if (!check_euler(*this))
    throw GeometryError("face structure violates Euler's formula");

  // Volume by the divergence theorem over planar faces.
  volume_ = 0.0;
  for (int f = 0; f < num_faces(); ++f)
    volume_ += face_centroid_[f].dot(face_normal_[f]) * face_area_[f] / 3.0;
  if (volume_ <= 0.0) throw GeometryError("non-positive volume; check face orientation");

  // Convexity: all vertices on the inner side of every face plane.
  const double tol = 1e-9 * diameter_;
  for (int f = 0; f < num_faces(); ++f)
    for (const Vec3& v : verts_)
      if (face_distance(f, v) < -tol)
        throw GeometryError("polyhedron is not convex: vertex beyond face " + std::to_string(f));

  build_classification();
  build_vertex_fans();
}

void Polyhedron::validate_faces() {
  const int nf = num_faces();
  face_normal_.resize(nf);
  face_area_.resize(nf);
  face_centroid_.resize(nf);
  face_frame_.resize(nf);

  for (int f = 0; f < nf; ++f) {
    const auto& loop = faces_[f];
    const int k = static_cast<int>(loop.size());
    if (k != 3 && k != 4)
      throw GeometryError("face " + std::to_string(f) + " has " + std::to_string(k) +
                          " vertices; only triangles and parallelograms are supported");

    Vec3 n = loop_normal(verts_, loop);
    const double area = n.norm();
    if (area <= 1e-14 * diameter_ * diameter_)
      throw GeometryError("face " + std::to_string(f) + " is degenerate");
    n /= area;

    Vec3 c = Vec3::Zero();
    for (int v : loop) c += verts_[v];
    c /= k;

    // Outward orientation under the right-hand rule.
    if ((c - vertex_centroid_).dot(n) <= 0.0)
      throw GeometryError("face " + std::to_string(f) + " is oriented inward");

    // Planarity relative to the centroid plane.
    for (int v : loop)
      if (std::abs((verts_[v] - c).dot(n)) > 1e-10 * diameter_)
        throw GeometryError("face " + std::to_string(f) + " is not planar");

    // Quads must close up as parallelograms: v0 - v1 + v2 - v3 = 0.
    if (k == 4) {
      const Vec3 gap = verts_[loop[0]] - verts_[loop[1]] + verts_[loop[2]] - verts_[loop[3]];
      if (gap.norm() > 1e-12 * diameter_)
        throw GeometryError("face " + std::to_string(f) + " is a quadrilateral but not a parallelogram");
    }

    face_normal_[f] = n;
    face_area_[f] = area;
    face_centroid_[f] = c;

    FaceFrame frame;
    frame.origin = c;
    frame.normal = n;
    frame.u = (verts_[loop[1]] - verts_[loop[0]]).normalized();
    frame.v = n.cross(frame.u);
    face_frame_[f] = frame;
  }
}

void Polyhedron::build_edges() {
  const int nv = num_vertices();
  edge_of_pair_.assign(static_cast<size_t>(nv) * nv, -1);

  // Map each directed loop edge to its face; every undirected edge must be
  // traversed once in each direction.
  std::map<std::pair<int, int>, int> directed_face;
  for (int f = 0; f < num_faces(); ++f) {
    const auto& loop = faces_[f];
    const int k = static_cast<int>(loop.size());
    for (int i = 0; i < k; ++i) {
      const int a = loop[i];
      const int b = loop[(i + 1) % k];
      if (a == b) throw GeometryError("face " + std::to_string(f) + " repeats a vertex");
      auto [it, inserted] = directed_face.insert({{a, b}, f});
      if (!inserted)
        throw GeometryError("directed edge shared by two faces; face orientations are inconsistent");
    }
  }

  vertex_edges_.assign(nv, {});
  for (const auto& [key, f] : directed_face) {
    const auto [a, b] = key;
    if (a > b) continue;  // handle each undirected edge once, from its low end
    auto rev = directed_face.find({b, a});
    if (rev == directed_face.end())
      throw GeometryError("edge traversed in one direction only; the surface is not closed");

    const int e = static_cast<int>(edges_.size());
    edges_.push_back({a, b});
    edge_len_.push_back((verts_[b] - verts_[a]).norm());
    left_face_.push_back(f);          // boundary of f contains a -> b
    right_face_.push_back(rev->second);
    edge_of_pair_[a * nv + b] = e;
    edge_of_pair_[b * nv + a] = e;
    vertex_edges_[a].push_back(e);
    vertex_edges_[b].push_back(e);
  }

  edge_hood_.resize(edges_.size());
  for (size_t e = 0; e < edges_.size(); ++e) {
    std::vector<int> hood;
    for (int f : {left_face_[e], right_face_[e]})
      for (int v : faces_[f])
        if (std::find(hood.begin(), hood.end(), v) == hood.end()) hood.push_back(v);
    edge_hood_[e] = std::move(hood);
  }
}

void Polyhedron::build_classification() {
  const int nv = num_vertices();
  seg_class_.assign(static_cast<size_t>(nv) * nv, SegmentClass::Interior);

  // Two vertices of a convex polyhedron share a face iff their segment lies
  // on the boundary; face-loop edges are the natural edges.
  for (const auto& loop : faces_)
    for (size_t i = 0; i < loop.size(); ++i)
      for (size_t j = 0; j < loop.size(); ++j)
        if (i != j) seg_class_[loop[i] * nv + loop[j]] = SegmentClass::Face;

  for (const auto& [a, b] : edges_) {
    seg_class_[a * nv + b] = SegmentClass::Edge;
    seg_class_[b * nv + a] = SegmentClass::Edge;
  }
}

void Polyhedron::build_vertex_fans() {
  const int nv = num_vertices();
  vertex_fan_.assign(nv, {});

  for (int v = 0; v < nv; ++v) {
    // Incident faces with the loop neighbors of v: loop runs prev -> v -> next.
    struct Incident {
      int face, prev, next;
    };
    std::vector<Incident> inc;
    for (int f = 0; f < num_faces(); ++f) {
      const auto& loop = faces_[f];
      const int k = static_cast<int>(loop.size());
      for (int i = 0; i < k; ++i)
        if (loop[i] == v) inc.push_back({f, loop[(i + k - 1) % k], loop[(i + 1) % k]});
    }
    if (inc.size() < 3)
      throw GeometryError("vertex " + std::to_string(v) + " has fewer than 3 incident faces");

    // Walk around v: crossing the edge (v, next) leads to the face whose
    // loop enters v from that neighbor.
    std::vector<int> order;
    std::vector<bool> used(inc.size(), false);
    int cur = 0;
    while (true) {
      order.push_back(inc[cur].face);
      used[cur] = true;
      const int across = inc[cur].next;
      int nxt = -1;
      for (size_t m = 0; m < inc.size(); ++m)
        if (!used[m] && inc[m].prev == across) {
          nxt = static_cast<int>(m);
          break;
        }
      if (nxt == -1) break;
      cur = nxt;
    }
    if (order.size() != inc.size() || inc[cur].next != inc[0].prev)
      throw GeometryError("faces around vertex " + std::to_string(v) + " do not form a single cycle");

    // Orient the cycle counterclockwise around the outward direction at v.
    const Vec3 out = (verts_[v] - vertex_centroid_).normalized();
    double winding = 0.0;
    for (size_t m = 0; m < order.size(); ++m) {
      const Vec3& n0 = face_normal_[order[m]];
      const Vec3& n1 = face_normal_[order[(m + 1) % order.size()]];
      winding += out.dot(n0.cross(n1));
    }
    if (winding < 0.0) std::reverse(order.begin(), order.end());

    vertex_fan_[v] = std::move(order);
  }
}

Polygon2D Polyhedron::face_polygon(int f) const {
  const FaceFrame& frame = face_frame_[f];
  std::vector<Vec2> pts;
  pts.reserve(faces_[f].size());
  for (int v : faces_[f]) pts.push_back(frame.project(verts_[v]));
  return Polygon2D(std::move(pts));
}

Vec3 Polyhedron::edge_tangent(int e) const {
  const auto [a, b] = edges_[e];
  return (verts_[b] - verts_[a]) / edge_len_[e];
}

Vec3 Polyhedron::edge_point(int e, double s) const {
  const auto [a, b] = edges_[e];
  return verts_[a] + s * (verts_[b] - verts_[a]);
}

SegmentClass Polyhedron::segment_class(int i, int j) const {
  if (i == j) throw std::invalid_argument("segment_class requires distinct vertices");
  return seg_class_[i * num_vertices() + j];
}

double Polyhedron::face_distance(int f, const Vec3& x) const {
  return (face_centroid_[f] - x).dot(face_normal_[f]);
}

double Polyhedron::boundary_distance(const Vec3& x) const {
  double d = std::numeric_limits<double>::max();
  for (int f = 0; f < num_faces(); ++f) d = std::min(d, face_distance(f, x));
  return d;
}

std::vector<SegmentClass> classify_segments(const Polyhedron& poly) {
  const int nv = poly.num_vertices();
  std::vector<SegmentClass> table(static_cast<size_t>(nv) * nv, SegmentClass::Interior);
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nv; ++j)
      if (i != j) table[i * nv + j] = poly.segment_class(i, j);
  return table;
}

bool check_euler(const Polyhedron& poly) {
  return poly.num_edges() == poly.num_vertices() + poly.num_faces() - 2;
}

}  // namespace polyfe
