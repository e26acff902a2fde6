#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "polyfe/barycentric.hpp"
#include "polyfe/element2d.hpp"
#include "polyfe/element3d.hpp"
#include "polyfe/shapes.hpp"

using namespace polyfe;

TEST_SUITE_BEGIN("barycentric");

TEST_CASE("unit square values") {
  const Polygon2D square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto bc = wachspress(square, Vec2(0.25, 0.5));
  CHECK(bc.values[0] == doctest::Approx(0.375).epsilon(1e-13));
  CHECK(bc.values[1] == doctest::Approx(0.125).epsilon(1e-13));
  CHECK(bc.values[2] == doctest::Approx(0.125).epsilon(1e-13));
  CHECK(bc.values[3] == doctest::Approx(0.375).epsilon(1e-13));
}

TEST_CASE("regular polygon symmetry at the centroid") {
  std::vector<Vec2> pts;
  for (int k = 0; k < 5; ++k)
    pts.emplace_back(std::cos(2 * M_PI * k / 5), std::sin(2 * M_PI * k / 5));
  const Polygon2D pentagon(pts);
  const auto bc = wachspress(pentagon, pentagon.centroid());
  for (double v : bc.values) CHECK(v == doctest::Approx(0.2).epsilon(1e-13));

  const Polyhedron octa = make_regular_octahedron();
  const auto bc3 = wachspress(octa, Vec3(0, 0, 0));
  for (double v : bc3.values) CHECK(v == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
}

TEST_CASE("triangles and tetrahedra degenerate to the affine coordinates") {
  std::mt19937 rng(31);
  const Polygon2D tri({{0.2, 0.1}, {1.4, 0.3}, {0.5, 1.2}});
  for (const Vec2& x : oracle::random_interior_points(tri, 50, rng)) {
    const auto bc = wachspress(tri, x);
    const auto exact = oracle::affine_triangle(tri.vertex(0), tri.vertex(1), tri.vertex(2), x);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(bc.values[i] - exact(i)) < 1e-12);
  }

  const Polyhedron tet = make_tetrahedron();
  for (const Vec3& x : oracle::random_interior_points(tet, 50, rng)) {
    const auto bc = wachspress(tet, x);
    const auto exact =
        oracle::affine_tetrahedron(tet.vertex(0), tet.vertex(1), tet.vertex(2), tet.vertex(3), x);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(bc.values[i] - exact(i)) < 1e-12);
  }
}

TEST_CASE("unit cube coordinates are the trilinear products") {
  const Polyhedron cube = make_cube();
  std::mt19937 rng(37);
  for (const Vec3& p : oracle::random_interior_points(cube, 50, rng)) {
    const auto bc = wachspress(cube, p);
    const double x = p.x(), y = p.y(), z = p.z();
    const double expected[8] = {(1 - x) * (1 - y) * (1 - z), x * (1 - y) * (1 - z),
                                x * y * (1 - z),             (1 - x) * y * (1 - z),
                                (1 - x) * (1 - y) * z,       x * (1 - y) * z,
                                x * y * z,                   (1 - x) * y * z};
    for (int i = 0; i < 8; ++i) CHECK(std::abs(bc.values[i] - expected[i]) < 1e-12);
  }
}

TEST_CASE("partition of unity, linear precision, gradient sum") {
  std::mt19937 rng(41);
  const auto poly_pts = oracle::random_convex_polygon(7, rng);
  const Polygon2D poly(poly_pts);
  for (const Vec2& x : oracle::random_interior_points(poly, 1000, rng)) {
    const auto bc = wachspress(poly, x);
    double sum = 0.0;
    Vec2 moment = Vec2::Zero(), grad_sum = Vec2::Zero();
    for (int i = 0; i < poly.size(); ++i) {
      CHECK(bc.values[i] >= 0.0);
      sum += bc.values[i];
      moment += bc.values[i] * poly.vertex(i);
      grad_sum += bc.gradients[i];
    }
    CHECK(std::abs(sum - 1.0) < 1e-10);
    CHECK((moment - x).norm() < 1e-10);
    CHECK(grad_sum.norm() < 1e-10);
  }

  for (const auto& name : builtin_shape_names()) {
    CAPTURE(name);
    const Polyhedron shape = make_shape(name);
    for (const Vec3& x : oracle::random_interior_points(shape, 1000, rng)) {
      const auto bc = wachspress(shape, x);
      double sum = 0.0;
      Vec3 moment = Vec3::Zero(), grad_sum = Vec3::Zero();
      for (int i = 0; i < shape.num_vertices(); ++i) {
        CHECK(bc.values[i] >= 0.0);
        sum += bc.values[i];
        moment += bc.values[i] * shape.vertex(i);
        grad_sum += bc.gradients[i];
      }
      CHECK(std::abs(sum - 1.0) < 1e-10);
      CHECK((moment - x).norm() < 1e-10);
      CHECK(grad_sum.norm() < 1e-10);
    }
  }
}

TEST_CASE("analytic gradients match finite differences") {
  std::mt19937 rng(43);
  const auto poly_pts = oracle::random_convex_polygon(6, rng);
  const Polygon2D poly(poly_pts);
  const double h2 = 1e-6 * poly.diameter();
  for (const Vec2& x : oracle::random_interior_points(poly, 100, rng)) {
    const auto bc = wachspress(poly, x);
    for (int i = 0; i < poly.size(); ++i) {
      const Vec2 fd = oracle::fd_gradient(
          [&poly, i](const Vec2& p) { return wachspress(poly, p).values[i]; }, x, h2);
      CHECK((bc.gradients[i] - fd).norm() < 1e-5 * std::max(1.0, fd.norm()));
    }
  }

  for (const auto& name : builtin_shape_names()) {
    CAPTURE(name);
    const Polyhedron shape = make_shape(name);
    const double h3 = 1e-6 * shape.diameter();
    for (const Vec3& x : oracle::random_interior_points(shape, 100, rng)) {
      const auto bc = wachspress(shape, x);
      for (int i = 0; i < shape.num_vertices(); ++i) {
        const Vec3 fd = oracle::fd_gradient(
            [&shape, i](const Vec3& p) { return wachspress(shape, p).values[i]; }, x, h3);
        CHECK((bc.gradients[i] - fd).norm() < 1e-5 * std::max(1.0, fd.norm()));
      }
    }
  }
}

TEST_CASE("domain errors outside and on the boundary") {
  const Polygon2D square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK_THROWS_AS(wachspress(square, Vec2(1.5, 0.5)), DomainError);
  CHECK_THROWS_AS(wachspress(square, Vec2(0.5, 0.0)), DomainError);
  const Polyhedron cube = make_cube();
  CHECK_THROWS_AS(wachspress(cube, Vec3(2, 0.5, 0.5)), DomainError);
  CHECK_THROWS_AS(wachspress(cube, Vec3(0.5, 0.5, 1.0)), DomainError);
}

TEST_CASE("boundary traces are piecewise linear") {
  std::mt19937 rng(47);
  const Polygon2D poly(oracle::random_convex_polygon(5, rng));

  const auto at0 = edge_trace(poly, 1, 0.0);
  CHECK(at0[1] == doctest::Approx(1.0));
  for (int i = 0; i < poly.size(); ++i)
    if (i != 1) CHECK(at0[i] == doctest::Approx(0.0));

  const auto mid = edge_trace(poly, 1, 0.5);
  CHECK(mid[1] == doctest::Approx(0.5));
  CHECK(mid[2] == doctest::Approx(0.5));

  // Interior evaluation just off the edge matches the trace.
  const double eps = 1e-7 * poly.diameter();
  for (int e = 0; e < poly.size(); ++e) {
    for (double s : {0.2, 0.5, 0.8}) {
      const Vec2 x = poly.edge_point(e, s) - eps * poly.edge_normal(e);
      const auto bc = wachspress(poly, x);
      const auto trace = edge_trace(poly, e, s);
      for (int i = 0; i < poly.size(); ++i) CHECK(std::abs(bc.values[i] - trace[i]) < 1e-5);
    }
  }
}

TEST_CASE("3d coordinates restrict to the face coordinates") {
  for (const auto& name : builtin_shape_names()) {
    CAPTURE(name);
    const Polyhedron shape = make_shape(name);
    for (int f = 0; f < shape.num_faces(); ++f) {
      const Polygon2D face_poly = shape.face_polygon(f);
      const FaceFrame& frame = shape.face_frame(f);
      const double eps = 1e-7 * shape.diameter();
      for (const Vec2& uv : interior_grid(face_poly, 8, 0.2)) {
        const Vec3 x = frame.lift(uv) - eps * frame.normal;
        const auto bc3 = wachspress(shape, x);
        const auto bc2 = wachspress(face_poly, uv);
        const auto& loop = shape.face(f);
        double off_face = 0.0;
        for (int v = 0; v < shape.num_vertices(); ++v) {
          const auto it = std::find(loop.begin(), loop.end(), v);
          if (it == loop.end())
            off_face = std::max(off_face, bc3.values[v]);
          else
            CHECK(std::abs(bc3.values[v] - bc2.values[it - loop.begin()]) < 1e-4);
        }
        CHECK(off_face < 1e-4);
      }
    }
  }
}

TEST_CASE("gradient cross-product identities on faces") {
  // Right triangle with area 1/2: every cyclic determinant equals 1.
  const Polygon2D tri({{0, 0}, {1, 0}, {0, 1}});
  std::mt19937 rng(53);
  for (const Vec2& x : oracle::random_interior_points(tri, 20, rng))
    for (double r : cross_product_residuals(tri, x)) CHECK(std::abs(r) < 1e-12);

  const Polygon2D square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  for (const Vec2& x : oracle::random_interior_points(square, 20, rng))
    for (double r : cross_product_residuals(square, x)) CHECK(std::abs(r) < 1e-12);

  // Sheared parallelogram, checked against symbolic gradients.
  const double h1 = 2.0, h2 = 1.0, k = 0.3;
  const Polygon2D para({{0, 0}, {h1, 0}, {h1 + k * h2, h2}, {k * h2, h2}});
  for (const Vec2& p : oracle::random_interior_points(para, 100, rng)) {
    for (double r : cross_product_residuals(para, p)) CHECK(std::abs(r) < 1e-12);
    const double x = p.x(), y = p.y();
    const auto bc = wachspress(para, p);
    const Vec2 grad1(-(h2 - y) / (h1 * h2), (x - 2 * k * y - h1 + k * h2) / (h1 * h2));
    const Vec2 grad3(y / (h1 * h2), (x - 2 * k * y) / (h1 * h2));
    CHECK((bc.gradients[0] - grad1).norm() < 1e-12);
    CHECK((bc.gradients[2] - grad3).norm() < 1e-12);
  }

  CHECK_THROWS_AS(cross_product_residuals(Polygon2D({{0, 0}, {1, 0}, {1.2, 1}, {0.5, 1.5}, {-0.2, 0.9}}),
                                          Vec2(0.5, 0.5)),
                  GeometryError);
}

TEST_SUITE_END();
