#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "polyfe/element3d.hpp"
#include "polyfe/shapes.hpp"

using namespace polyfe;

TEST_SUITE_BEGIN("element3d");

TEST_CASE("face basis right-hand sides are compatible") {
  const Polyhedron octa = make_regular_octahedron();
  const Vec3 x0 = octa.vertex_centroid();
  for (int f = 0; f < octa.num_faces(); ++f) {
    double sum = 0.0;
    for (int g = 0; g < octa.num_faces(); ++g) {
      const double pyramid = octa.face_distance(g, x0) * octa.face_area(g) / 3.0;
      sum += (f == g ? octa.face_area(g) : 0.0) - pyramid / octa.volume() * octa.face_area(f);
    }
    CHECK(std::abs(sum) < 1e-12);
  }
}

TEST_CASE("tetrahedron bases match the simplicial elements") {
  const Element3D elem(make_tetrahedron());
  const Polyhedron& tet = elem.cell();
  std::mt19937 rng(157);
  const auto points = oracle::random_interior_points(tet, 40, rng);

  SUBCASE("face basis equals lowest-order Raviart-Thomas") {
    const std::array<Vec3, 4> verts = {tet.vertex(0), tet.vertex(1), tet.vertex(2), tet.vertex(3)};
    for (int f = 0; f < 4; ++f) {
      // Opposite vertex: the one not in the face loop.
      int opposite = 0;
      for (int v = 0; v < 4; ++v)
        if (std::find(tet.face(f).begin(), tet.face(f).end(), v) == tet.face(f).end()) opposite = v;
      const std::array<int, 3> face = {tet.face(f)[0], tet.face(f)[1], tet.face(f)[2]};
      for (const Vec3& x : points) {
        const auto bc = wachspress(tet, x);
        const Vec3 expected = oracle::rt0_tetrahedron(verts, face, opposite, x);
        CHECK((elem.hdiv().eval(f, bc) - expected).norm() < 1e-10);
      }
    }
  }

  SUBCASE("edge basis equals the scaled Whitney forms") {
    for (int e = 0; e < tet.num_edges(); ++e) {
      const auto [i, j] = tet.edges()[e];
      for (const Vec3& x : points) {
        const auto bc = wachspress(tet, x);
        const Vec3 expected = tet.edge_length(e) * whitney_one_form(bc, i, j);
        CHECK((elem.hcurl().eval(e, bc) - expected).norm() < 1e-10);
      }
    }
  }
}

TEST_CASE("cube bases span the tensor-product spaces") {
  const Element3D elem(make_cube());
  const Polyhedron& cube = elem.cell();
  const std::vector<Vec3> grid = interior_grid(cube, 200);
  REQUIRE(grid.size() >= 200);

  SUBCASE("face basis members are the coordinate fields") {
    // The basis function of face x = 1 is (x, 0, 0), and so on by symmetry.
    for (int f = 0; f < 6; ++f) {
      const Vec3 n = cube.face_normal(f);
      for (const Vec3& x : grid) {
        const auto bc = wachspress(cube, x);
        // The dual field of the face with outward normal n is
        // q(x) = n (n . (x - far corner)), vanishing on the opposite face.
        const Vec3 corner = (n.sum() > 0) ? Vec3(0, 0, 0) : Vec3(1, 1, 1);
        const Vec3 expected = n * n.dot(x - corner);
        CHECK((elem.hdiv().eval(f, bc) - expected).norm() < 1e-9);
      }
    }
  }

  SUBCASE("edge basis spans Q_{0,1,1} x Q_{1,0,1} x Q_{1,1,0}") {
    // 12 generators, bidirectional fit against the 12 basis functions.
    std::vector<std::function<Vec3(const Vec3&)>> gens;
    for (int axis = 0; axis < 3; ++axis) {
      const int u = (axis + 1) % 3, v = (axis + 2) % 3;
      for (int du = 0; du <= 1; ++du)
        for (int dv = 0; dv <= 1; ++dv)
          gens.push_back([axis, u, v, du, dv](const Vec3& x) {
            Vec3 out = Vec3::Zero();
            out(axis) = std::pow(x(u), du) * std::pow(x(v), dv);
            return out;
          });
    }
    const int rows = 3 * static_cast<int>(grid.size());
    Eigen::MatrixXd gen_mat(rows, 12), basis_mat(rows, 12);
    for (size_t q = 0; q < grid.size(); ++q) {
      const auto bc = wachspress(cube, grid[q]);
      for (int k = 0; k < 12; ++k) {
        gen_mat.col(k).segment<3>(3 * q) = gens[k](grid[q]);
        basis_mat.col(k).segment<3>(3 * q) = elem.hcurl().eval(k, bc);
      }
    }
    const Eigen::MatrixXd fit1 = basis_mat.colPivHouseholderQr().solve(gen_mat);
    CHECK((basis_mat * fit1 - gen_mat).cwiseAbs().maxCoeff() < 1e-6);
    const Eigen::MatrixXd fit2 = gen_mat.colPivHouseholderQr().solve(basis_mat);
    CHECK((gen_mat * fit2 - basis_mat).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("prism bases span the wedge spaces") {
  const Element3D elem(make_triangular_prism());
  const Polyhedron& prism = elem.cell();
  const std::vector<Vec3> grid = interior_grid(prism, 200);
  REQUIRE(grid.size() >= 200);
  const int rows = 3 * static_cast<int>(grid.size());

  // Nine edge-space generators and five face-space generators.
  const std::vector<std::function<Vec3(const Vec3&)>> edge_gens = {
      [](const Vec3&) { return Vec3(1, 0, 0); },
      [](const Vec3&) { return Vec3(0, 1, 0); },
      [](const Vec3& x) { return Vec3(-x.y(), x.x(), 0); },
      [](const Vec3& x) { return Vec3(x.z(), 0, 0); },
      [](const Vec3& x) { return Vec3(0, x.z(), 0); },
      [](const Vec3& x) { return Vec3(-x.y() * x.z(), x.x() * x.z(), 0); },
      [](const Vec3&) { return Vec3(0, 0, 1); },
      [](const Vec3& x) { return Vec3(0, 0, x.x()); },
      [](const Vec3& x) { return Vec3(0, 0, x.y()); }};
  const std::vector<std::function<Vec3(const Vec3&)>> face_gens = {
      [](const Vec3& x) { return Vec3(x.x(), x.y(), 0); },
      [](const Vec3&) { return Vec3(1, 0, 0); },
      [](const Vec3&) { return Vec3(0, 1, 0); },
      [](const Vec3& x) { return Vec3(0, 0, x.z()); },
      [](const Vec3&) { return Vec3(0, 0, 1); }};

  Eigen::MatrixXd edge_gen_mat(rows, 9), edge_basis_mat(rows, 9);
  Eigen::MatrixXd face_gen_mat(rows, 5), face_basis_mat(rows, 5);
  for (size_t q = 0; q < grid.size(); ++q) {
    const auto bc = wachspress(prism, grid[q]);
    for (int k = 0; k < 9; ++k) {
      edge_gen_mat.col(k).segment<3>(3 * q) = edge_gens[k](grid[q]);
      edge_basis_mat.col(k).segment<3>(3 * q) = elem.hcurl().eval(k, bc);
    }
    for (int k = 0; k < 5; ++k) {
      face_gen_mat.col(k).segment<3>(3 * q) = face_gens[k](grid[q]);
      face_basis_mat.col(k).segment<3>(3 * q) = elem.hdiv().eval(k, bc);
    }
  }
  const auto span_residual = [](const Eigen::MatrixXd& basis, const Eigen::MatrixXd& targets) {
    return (basis * basis.colPivHouseholderQr().solve(targets).eval() - targets)
        .cwiseAbs()
        .maxCoeff();
  };
  CHECK(span_residual(edge_basis_mat, edge_gen_mat) < 1e-6);
  CHECK(span_residual(edge_gen_mat, edge_basis_mat) < 1e-6);
  CHECK(span_residual(face_basis_mat, face_gen_mat) < 1e-6);
  CHECK(span_residual(face_gen_mat, face_basis_mat) < 1e-6);
}

TEST_CASE("delta duality across the corpus") {
  for (const auto& name : builtin_shape_names()) {
    CAPTURE(name);
    const Element3D elem(make_shape(name));
    const DualityReport report = verify_duality(elem.cell(), elem.hdiv(), elem.hcurl());
    // Affine coordinates on the tetrahedron are exact; the cube traces are
    // polynomial; the rest carry rational-evaluation noise near the
    // boundary.
    const double tol = (name == "tetrahedron") ? 1e-8 : (name == "cube") ? 1e-6 : 1e-4;
    CHECK(report.max_face_residual < tol);
    CHECK(report.max_edge_residual < tol);
    CHECK(report.max_face_spread < 1e-4);
    CHECK(report.max_edge_spread < 1e-4);
  }
}

TEST_CASE("exact sequence dimensions and inclusions") {
  struct Expected {
    const char* name;
    int v, e, f;
  };
  for (const auto& [name, v, e, f] : {Expected{"cube", 8, 12, 6}, Expected{"octahedron", 6, 12, 8},
                                      Expected{"prism", 6, 9, 5}, Expected{"tetrahedron", 4, 6, 4},
                                      Expected{"pyramid", 5, 8, 5}}) {
    CAPTURE(name);
    const Element3D elem(make_shape(name));
    const auto grid = interior_grid(elem.cell(), 200);
    const ExactnessReport report = check_exactness(elem.cell(), elem.hcurl(), elem.hdiv(), grid);
    CHECK(report.num_vertices == v);
    CHECK(report.num_edges == e);
    CHECK(report.num_faces == f);
    CHECK(report.rank_hcurl_basis == e);
    CHECK(report.rank_hdiv_basis == f);
    CHECK(report.rank_gradients == v - 1);
    CHECK(report.rank_curls == f - 1);
    CHECK(report.dimensions_ok());
    CHECK(report.gradient_fit_residual < 1e-6);
    CHECK(report.gradient_fit_curl_residual < 1e-6);
    CHECK(report.curl_fit_residual < 1e-6);
    CHECK(report.min_divergence > 0.0);
  }
}

TEST_CASE("coefficients solve the incidence equations with zero gauges") {
  for (const auto& name : builtin_shape_names()) {
    CAPTURE(name);
    const Element3D elem(make_shape(name));
    const Polyhedron& poly = elem.cell();
    const Eigen::MatrixXd& a = elem.hcurl().vertex_coefficients();
    const Eigen::MatrixXd& b = elem.hcurl().face_coefficients();

    CHECK(a.rowwise().sum().cwiseAbs().maxCoeff() < 1e-10);
    CHECK(b.rowwise().sum().cwiseAbs().maxCoeff() < 1e-10);

    // Row of the incidence system for each pair of edges:
    // -a_start + a_end + b_left - b_right = delta |e'|.
    for (int e = 0; e < poly.num_edges(); ++e)
      for (int d = 0; d < poly.num_edges(); ++d) {
        const auto [alpha, beta] = poly.edges()[d];
        const double lhs = -a(e, alpha) + a(e, beta) + b(e, poly.left_face(d)) -
                           b(e, poly.right_face(d));
        const double rhs = (e == d) ? poly.edge_length(d) : 0.0;
        CHECK(std::abs(lhs - rhs) < 1e-10);
      }
  }
}

TEST_CASE("face basis divergence is the face area over the volume") {
  const Element3D elem(make_square_pyramid());
  const Polyhedron& poly = elem.cell();
  std::mt19937 rng(211);
  const double h = 1e-6 * poly.diameter();
  for (int f = 0; f < poly.num_faces(); ++f) {
    CHECK(elem.hdiv().divergence(f) ==
          doctest::Approx(poly.face_area(f) / poly.volume()).epsilon(1e-12));
    for (const Vec3& x : oracle::random_interior_points(poly, 10, rng)) {
      const double fd = oracle::fd_divergence3(
          [&](const Vec3& p) { return elem.hdiv().eval(f, wachspress(poly, p)); }, x, h);
      CHECK(std::abs(fd - elem.hdiv().divergence(f)) <
            1e-4 * std::max(1.0, elem.hdiv().divergence(f)));
    }
  }
}

TEST_CASE("gauge vectors generate the zero field") {
  const Element3D elem(make_cube());
  const Polyhedron& cube = elem.cell();
  std::mt19937 rng(163);
  for (const Vec3& x : oracle::random_interior_points(cube, 20, rng)) {
    const auto bc = wachspress(cube, x);
    // Constant shifts of the vertex or face coefficients change nothing:
    // gradients sum to zero and the face forms sum to zero.
    Vec3 grad_shift = Vec3::Zero(), face_shift = Vec3::Zero();
    for (int i = 0; i < cube.num_vertices(); ++i) grad_shift += bc.gradients[i];
    for (int f = 0; f < cube.num_faces(); ++f)
      face_shift += elem.forms().modified_face_form(f, bc);
    CHECK(grad_shift.norm() < 1e-10);
    CHECK(face_shift.norm() < 1e-10);
  }
}

TEST_CASE("bordered systems are well conditioned") {
  for (const auto& name : builtin_shape_names()) {
    CAPTURE(name);
    const Element3D elem(make_shape(name));
    const AdjacencyMatrices& adj = elem.adjacency();
    const int nf = elem.cell().num_faces();
    const int nv = elem.cell().num_vertices();
    const int ne = elem.cell().num_edges();

    Eigen::MatrixXd face_sys = Eigen::MatrixXd::Zero(nf + 1, nf + 1);
    face_sys.topLeftCorner(nf, nf) = adj.face_gram.cast<double>();
    face_sys.topRightCorner(nf, 1).setOnes();
    face_sys.bottomLeftCorner(1, nf).setOnes();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd1(face_sys);
    CHECK(svd1.singularValues().minCoeff() > 1e-10 * svd1.singularValues().maxCoeff());

    Eigen::MatrixXd edge_sys = Eigen::MatrixXd::Zero(ne + 2, nv + nf);
    edge_sys.topLeftCorner(ne, nv) = adj.vertex_to_edge.cast<double>();
    edge_sys.topRightCorner(ne, nf) = adj.face_to_edge.cast<double>();
    edge_sys.block(ne, 0, 1, nv).setOnes();
    edge_sys.block(ne + 1, nv, 1, nf).setOnes();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd2(edge_sys);
    CHECK(svd2.singularValues().minCoeff() > 1e-10 * svd2.singularValues().maxCoeff());
  }
}

TEST_CASE("type classification") {
  CHECK(classify_type(make_tetrahedron()).type == PolyhedronType::TypeI);
  CHECK(classify_type(make_square_pyramid()).type == PolyhedronType::TypeI);
  CHECK(classify_type(make_triangular_prism()).type == PolyhedronType::TypeI);
  CHECK(classify_type(make_cube()).type == PolyhedronType::TypeII);
  CHECK(classify_type(make_regular_octahedron()).type == PolyhedronType::TypeII);
  CHECK(classify_type(make_sheared_parallelepiped()).type == PolyhedronType::TypeII);

  // A far-off candidate center is rejected for the octahedron.
  const auto off = classify_type(make_regular_octahedron(), Vec3(0.3, 0.1, 0.2));
  CHECK(off.type == PolyhedronType::Neither);
}

TEST_CASE("simplicial space inclusion on type I and II cells") {
  for (const auto& name : builtin_shape_names()) {
    CAPTURE(name);
    const Element3D elem(make_shape(name));
    const auto grid = interior_grid(elem.cell(), 200);
    const InclusionReport report =
        check_p1minus_inclusion(elem.cell(), elem.hcurl(), elem.hdiv(), grid);
    CHECK(report.max_residual() < 1e-4);
    if (name == "tetrahedron") CHECK(report.max_residual() < 1e-8);
    if (name == "cube")
      for (double r : report.hcurl_residuals) CHECK(r < 1e-6);
  }
}

TEST_CASE("boundary tangential components come from the modified forms") {
  for (const auto& name : builtin_shape_names()) {
    CAPTURE(name);
    const Element3D elem(make_shape(name));
    CHECK(tangential_trace_residual(elem.cell(), elem.forms(), elem.hcurl()) < 1e-4);
  }
}

TEST_CASE("rotation-field compatibility constraints") {
  SUBCASE("octahedron center satisfies every vertex constraint") {
    const Polyhedron octa = make_regular_octahedron();
    for (const Vec3& a : {Vec3(1, 0, 0), Vec3(0.3, -1.2, 0.5)}) {
      const auto report = check_typeII_solvability(octa, Vec3(0, 0, 0), a);
      CHECK(report.max_vertex_residual < 1e-12);
      CHECK(report.reconstruction_residual < 1e-12);
    }
  }

  SUBCASE("zero field gives zero residuals") {
    const auto report =
        check_typeII_solvability(make_cube(), Vec3(0.5, 0.5, 0.5), Vec3::Zero());
    CHECK(report.max_vertex_residual == 0.0);
    CHECK(report.reconstruction_residual < 1e-14);
  }

  SUBCASE("cube system is solvable") {
    const auto report =
        check_typeII_solvability(make_cube(), Vec3(0.5, 0.5, 0.5), Vec3(1, 1, 1));
    CHECK(report.max_vertex_residual < 1e-12);
    CHECK(report.reconstruction_residual < 1e-12);
  }
}

TEST_CASE("full verification passes on the corpus") {
  for (const auto& name : builtin_shape_names()) {
    CAPTURE(name);
    const Element3D elem(make_shape(name));
    const CellVerification v = verify_cell(elem);
    CHECK(v.passed());
    CHECK(v.interior_combination_residual < 1e-12);
  }
}

TEST_SUITE_END();
