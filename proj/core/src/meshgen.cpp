#include "polyfe/meshgen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "polyfe/quadrature.hpp"

namespace polyfe {

Mesh2D generate_quad_mesh(int n, double distortion) {
  if (n < 2) throw std::invalid_argument("generate_quad_mesh: n must be at least 2");
  if (distortion < 0.0 || distortion >= 0.5)
    throw std::invalid_argument("generate_quad_mesh: distortion must be in [0, 0.5)");

  const double h = 1.0 / n;
  std::vector<Vec2> verts((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      const double x = i * h;
      const double y = j * h;
      Vec2 p(x, y);
      if (i > 0 && i < n && j > 0 && j < n) {
        p.x() += distortion * h * std::sin(2.0 * M_PI * x) * std::sin(M_PI * y);
        p.y() += distortion * h * std::sin(M_PI * x) * std::sin(2.0 * M_PI * y);
      }
      verts[j * (n + 1) + i] = p;
    }

  std::vector<std::vector<int>> cells;
  cells.reserve(n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int v = j * (n + 1) + i;
      cells.push_back({v, v + 1, v + n + 2, v + n + 1});
    }

  try {
    return Mesh2D(std::move(verts), std::move(cells));
  } catch (const GeometryError& err) {
    throw GeometryError(std::string("distortion produced an invalid cell: ") + err.what());
  }
}

Mesh2D generate_hex_dual_mesh(int n) {
  if (n < 2) throw std::invalid_argument("generate_hex_dual_mesh: n must be at least 2");
  const double h = 1.0 / n;

  // Uniform triangulation: square (a, b) is split by the diagonal from its
  // lower-left to its upper-right corner into triangles t0 (lower right)
  // and t1 (upper left). Dual vertices: one per triangle centroid, one per
  // boundary grid-edge midpoint, one per domain corner.
  const auto grid = [n](int i, int j) { return j * (n + 1) + i; };
  const auto tri_id = [n](int a, int b, int t) { return 2 * (b * n + a) + t; };

  std::vector<Vec2> dual_verts(2 * n * n);
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      const Vec2 c0 = Vec2((a + a + 1 + a + 1) / 3.0, (b + b + b + 1) / 3.0) * h;
      const Vec2 c1 = Vec2((a + a + 1 + a) / 3.0, (b + b + 1 + b + 1) / 3.0) * h;
      dual_verts[tri_id(a, b, 0)] = c0;
      dual_verts[tri_id(a, b, 1)] = c1;
    }

  std::map<std::pair<int, int>, int> midpoint_id;  // boundary grid edge (lo, hi) -> dual vertex
  const auto midpoint = [&](int va, int vb, const Vec2& pa, const Vec2& pb) {
    const auto key = std::minmax(va, vb);
    auto [it, inserted] = midpoint_id.insert({key, static_cast<int>(dual_verts.size())});
    if (inserted) dual_verts.push_back(0.5 * (pa + pb));
    return it->second;
  };

  // Incident triangles of grid vertex (i, j), as (square, which) pairs.
  const auto incident = [&](int i, int j) {
    std::vector<std::pair<int, int>> tris;  // (a, b) packed with triangle index
    for (int db = -1; db <= 0; ++db)
      for (int da = -1; da <= 0; ++da) {
        const int a = i + da;
        const int b = j + db;
        if (a < 0 || a >= n || b < 0 || b >= n) continue;
        // Triangle t0 = {(a,b), (a+1,b), (a+1,b+1)}, t1 = {(a,b), (a+1,b+1), (a,b+1)}.
        const auto contains = [&](int t) {
          const int vs[2][3][2] = {{{a, b}, {a + 1, b}, {a + 1, b + 1}},
                                   {{a, b}, {a + 1, b + 1}, {a, b + 1}}};
          for (const auto& v : vs[t])
            if (v[0] == i && v[1] == j) return true;
          return false;
        };
        if (contains(0)) tris.push_back({b * n + a, 0});
        if (contains(1)) tris.push_back({b * n + a, 1});
      }
    return tris;
  };

  std::vector<std::vector<int>> cells;
  cells.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      const Vec2 v(i * h, j * h);
      std::vector<int> ring;
      for (const auto& [sq, t] : incident(i, j)) ring.push_back(2 * sq + t);

      const bool on_left = (i == 0), on_right = (i == n), on_bottom = (j == 0), on_top = (j == n);
      if (on_bottom && i > 0) ring.push_back(midpoint(grid(i - 1, j), grid(i, j), v - Vec2(h, 0), v));
      if (on_bottom && i < n) ring.push_back(midpoint(grid(i, j), grid(i + 1, j), v, v + Vec2(h, 0)));
      if (on_top && i > 0) ring.push_back(midpoint(grid(i - 1, j), grid(i, j), v - Vec2(h, 0), v));
      if (on_top && i < n) ring.push_back(midpoint(grid(i, j), grid(i + 1, j), v, v + Vec2(h, 0)));
      if (on_left && j > 0) ring.push_back(midpoint(grid(i, j - 1), grid(i, j), v - Vec2(0, h), v));
      if (on_left && j < n) ring.push_back(midpoint(grid(i, j), grid(i, j + 1), v, v + Vec2(0, h)));
      if (on_right && j > 0) ring.push_back(midpoint(grid(i, j - 1), grid(i, j), v - Vec2(0, h), v));
      if (on_right && j < n) ring.push_back(midpoint(grid(i, j), grid(i, j + 1), v, v + Vec2(0, h)));

      // Sort counterclockwise around v, cutting the circle along the
      // outward direction so boundary rings stay contiguous.
      const Vec2 out = v - Vec2(0.5, 0.5);
      const double theta0 = (out.norm() > 1e-12) ? std::atan2(out.y(), out.x()) : 0.0;
      std::sort(ring.begin(), ring.end(), [&](int p, int q) {
        const Vec2 dp = dual_verts[p] - v;
        const Vec2 dq = dual_verts[q] - v;
        const double ap = std::fmod(std::atan2(dp.y(), dp.x()) - theta0 + 4 * M_PI, 2 * M_PI);
        const double aq = std::fmod(std::atan2(dq.y(), dq.x()) - theta0 + 4 * M_PI, 2 * M_PI);
        return ap < aq;
      });

      const bool corner = (on_left || on_right) && (on_bottom || on_top);
      if (corner) {
        ring.push_back(static_cast<int>(dual_verts.size()));
        dual_verts.push_back(v);
      }
      cells.push_back(std::move(ring));
    }

  return Mesh2D(std::move(dual_verts), std::move(cells));
}

namespace {

using Poly = std::vector<Vec2>;

// Sutherland-Hodgman clip of a convex polygon against g . x <= c.
Poly clip_halfplane(const Poly& poly, const Vec2& g, double c) {
  Poly out;
  const int m = static_cast<int>(poly.size());
  for (int i = 0; i < m; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % m];
    const double da = g.dot(a) - c;
    const double db = g.dot(b) - c;
    if (da <= 0.0) out.push_back(a);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db <= 0.0)) {
      const double t = da / (da - db);
      out.push_back(a + t * (b - a));
    }
  }
  // Collapse the near-duplicate corners a tangent cut can leave behind.
  Poly clean;
  for (const Vec2& p : out) {
    if (clean.empty() || (clean.back() - p).norm() > 1e-12) clean.push_back(p);
  }
  while (clean.size() > 1 && (clean.front() - clean.back()).norm() <= 1e-12) clean.pop_back();
  return clean;
}

Poly voronoi_cell(const std::vector<Vec2>& gens, int i, const std::vector<int>& by_distance) {
  Poly cell = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const Vec2 gi = gens[i];
  for (int j : by_distance) {
    if (j == i) continue;
    const Vec2 diff = gens[j] - gi;
    const double dist = diff.norm();
    double reach = 0.0;
    for (const Vec2& p : cell) reach = std::max(reach, (p - gi).norm());
    if (dist > 2.0 * reach) break;  // no farther generator can cut this cell
    cell = clip_halfplane(cell, diff, diff.dot(0.5 * (gi + gens[j])));
    if (cell.size() < 3) throw GeometryError("empty Voronoi cell; coincident generators?");
  }
  return cell;
}

Vec2 polygon_centroid(const Poly& poly) {
  double twice_area = 0.0;
  Vec2 moment = Vec2::Zero();
  const int m = static_cast<int>(poly.size());
  for (int i = 0; i < m; ++i) {
    const double c = cross2(poly[i], poly[(i + 1) % m]);
    twice_area += c;
    moment += (poly[i] + poly[(i + 1) % m]) * c;
  }
  return moment / (3.0 * twice_area);
}

}  // namespace

Mesh2D generate_cvt_mesh(int n, const CvtOptions& options, std::vector<double>* energy_log) {
  if (n < 2) throw std::invalid_argument("generate_cvt_mesh: n must be at least 2");
  if (options.lloyd_iterations < 0)
    throw std::invalid_argument("generate_cvt_mesh: iteration count must be nonnegative");

  const int count = n * n;
  std::vector<Vec2> gens(count);
  std::mt19937 rng(options.seed);
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      Vec2 g((i + 0.5) / n, (j + 0.5) / n);
      if (options.jitter != 0.0) {
        g.x() += options.jitter * unit(rng) / n;
        g.y() += options.jitter * unit(rng) / n;
      }
      gens[j * n + i] = g;
    }

  std::vector<int> by_distance(count);
  std::vector<Poly> cells(count);
  const auto compute_cells = [&](bool log_energy) {
    double energy = 0.0;
    for (int i = 0; i < count; ++i) {
      std::iota(by_distance.begin(), by_distance.end(), 0);
      const Vec2 gi = gens[i];
      std::sort(by_distance.begin(), by_distance.end(), [&](int p, int q) {
        return (gens[p] - gi).squaredNorm() < (gens[q] - gi).squaredNorm();
      });
      cells[i] = voronoi_cell(gens, i, by_distance);
      if (log_energy) {
        const Polygon2D cell_poly(cells[i]);
        energy += PolygonRule(cell_poly, 2).integrate(
            [&](const Vec2& x) { return (x - gi).squaredNorm(); });
      }
    }
    if (log_energy && energy_log) energy_log->push_back(energy);
  };

  for (int iter = 0; iter < options.lloyd_iterations; ++iter) {
    compute_cells(energy_log != nullptr);
    for (int i = 0; i < count; ++i) gens[i] = polygon_centroid(cells[i]);
  }
  compute_cells(energy_log != nullptr);

  // Merge the per-cell corner coordinates into a shared vertex table.
  // Corners computed from different clip orders agree to roundoff, far
  // below the snap distance.
  constexpr double snap = 1e-9;
  std::map<std::pair<long long, long long>, int> lookup;
  std::vector<Vec2> verts;
  const auto vertex_id = [&](const Vec2& p) {
    const long long kx = std::llround(p.x() / snap);
    const long long ky = std::llround(p.y() / snap);
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        const auto it = lookup.find({kx + dx, ky + dy});
        if (it != lookup.end() && (verts[it->second] - p).norm() <= snap) return it->second;
      }
    const int id = static_cast<int>(verts.size());
    verts.push_back(p);
    lookup[{kx, ky}] = id;
    return id;
  };

  std::vector<std::vector<int>> loops(count);
  for (int i = 0; i < count; ++i) {
    for (const Vec2& p : cells[i]) {
      const int id = vertex_id(p);
      if (loops[i].empty() || loops[i].back() != id) loops[i].push_back(id);
    }
    while (loops[i].size() > 1 && loops[i].front() == loops[i].back()) loops[i].pop_back();
    if (loops[i].size() < 3) throw GeometryError("Voronoi cell collapsed during vertex merging");
  }

  return Mesh2D(std::move(verts), std::move(loops));
}

}  // namespace polyfe
