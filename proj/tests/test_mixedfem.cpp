#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "polyfe/mixedfem.hpp"

using namespace polyfe;

TEST_SUITE_BEGIN("mixedfem");

namespace {

PoissonProblem constant_problem(double value) {
  PoissonProblem p;
  p.solution = [value](const Vec2&) { return value; };
  p.source = [](const Vec2&) { return 0.0; };
  p.boundary = [value](const Vec2&) { return value; };
  p.flux = [](const Vec2&) { return Vec2::Zero(); };
  p.flux_divergence = [](const Vec2&) { return 0.0; };
  p.divergence_is_constant = true;
  return p;
}

}  // namespace

TEST_CASE("single-cell assembly structure") {
  const Mesh2D mesh({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2, 3}});
  const SaddleSystem sys = assemble(mesh, smooth_problem());

  REQUIRE(sys.mass.rows() == 4);
  const Eigen::MatrixXd m = Eigen::MatrixXd(sys.mass);
  CHECK((m - m.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  CHECK(eig.eigenvalues().minCoeff() > 0.0);

  // Divergence row: signed unit edge lengths.
  const Eigen::MatrixXd b = Eigen::MatrixXd(sys.divergence);
  REQUIRE(b.rows() == 1);
  for (int e = 0; e < 4; ++e) CHECK(std::abs(b(0, e)) == doctest::Approx(1.0).epsilon(1e-12));

  // Load: integral of f over the cell, up to the quadrature error.
  const double exact = 2.0 * M_PI * M_PI * (2.0 / M_PI) * (2.0 / M_PI);
  CHECK(sys.load(0) == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("interior edges carry opposite divergence signs") {
  const Mesh2D mesh({{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}}, {{0, 1, 4, 3}, {1, 2, 5, 4}});
  const SaddleSystem sys = assemble(mesh, smooth_problem());
  int shared = -1;
  for (int e = 0; e < mesh.num_edges(); ++e)
    if (!mesh.edge(e).boundary()) shared = e;
  REQUIRE(shared >= 0);
  const Eigen::MatrixXd b = Eigen::MatrixXd(sys.divergence);
  CHECK(b(0, shared) == doctest::Approx(-b(1, shared)).epsilon(1e-12));
}

TEST_CASE("zero data gives the zero solution") {
  const Mesh2D mesh = generate_quad_mesh(4, 0.2);
  PoissonProblem zero = constant_problem(0.0);
  const MixedSolution sol = solve(assemble(mesh, zero));
  CHECK(sol.residual < 1e-12);
  CHECK(sol.flux.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(sol.scalar.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("patch tests") {
  const Mesh2D mesh = generate_quad_mesh(4, 0.3);

  SUBCASE("constant solution is exact") {
    const PoissonProblem p = constant_problem(2.5);
    const MixedSolution sol = solve(assemble(mesh, p));
    const ErrorTriple err = compute_errors(mesh, sol, p);
    CHECK(err.flux < 1e-10);
    CHECK(err.scalar < 1e-10);
  }

  SUBCASE("linear solution has exact flux") {
    PoissonProblem p;
    p.solution = [](const Vec2& x) { return x.x(); };
    p.source = [](const Vec2&) { return 0.0; };
    p.boundary = p.solution;
    p.flux = [](const Vec2&) { return Vec2(1.0, 0.0); };
    p.flux_divergence = [](const Vec2&) { return 0.0; };
    p.divergence_is_constant = true;
    const MixedSolution sol = solve(assemble(mesh, p));
    const ErrorTriple err = compute_errors(mesh, sol, p);
    CHECK(err.flux < 1e-9);  // P1- flux is reproduced exactly
  }

  SUBCASE("quadratic solution reproduces the divergence projection") {
    PoissonProblem p;
    p.solution = [](const Vec2& x) { return x.squaredNorm(); };
    p.source = [](const Vec2&) { return -4.0; };
    p.boundary = p.solution;
    p.flux = [](const Vec2& x) { return Vec2(2 * x.x(), 2 * x.y()); };
    p.flux_divergence = [](const Vec2&) { return 4.0; };
    p.divergence_is_constant = true;
    const SaddleSystem sys = assemble(mesh, p);
    const MixedSolution sol = solve(sys);
    // div p_h per cell must equal the cell mean of div p = 4.
    for (int c = 0; c < mesh.num_cells(); ++c) {
      double div_h = 0.0;
      const Polygon2D& poly = mesh.cell_polygon(c);
      for (size_t le = 0; le < mesh.cell(c).size(); ++le)
        div_h += mesh.cell_edge_sign(c, le) * sol.flux(mesh.cell_edge(c, le)) *
                 poly.edge_length(le) / poly.area();
      CHECK(div_h == doctest::Approx(4.0).epsilon(1e-9));
    }
    CHECK(conservation_residual(mesh, sol, sys) < 1e-9);
  }
}

TEST_CASE("errors of the zero solution are the field norms") {
  const Mesh2D mesh = generate_quad_mesh(4, 0.0);
  const PoissonProblem p = smooth_problem();
  MixedSolution zero;
  zero.flux = Eigen::VectorXd::Zero(mesh.num_edges());
  zero.scalar = Eigen::VectorXd::Zero(mesh.num_cells());
  const ErrorTriple err = compute_errors(mesh, zero, p);
  // |p| = pi / sqrt(2), |div p| = sqrt(2) pi^2 / ... : compute on [0,1]^2:
  // int |grad u|^2 = pi^2 / 2, int (div p)^2 = pi^4, int u^2 = 1/4.
  CHECK(err.flux == doctest::Approx(M_PI / std::sqrt(2.0)).epsilon(1e-10));
  CHECK(err.flux_divergence == doctest::Approx(M_PI * M_PI).epsilon(1e-10));
  CHECK(err.scalar == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("single-cell errors match an independent quadrature") {
  const Mesh2D mesh({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2, 3}});
  const PoissonProblem p = smooth_problem();
  const MixedSolution sol = solve(assemble(mesh, p));
  const ErrorTriple err = compute_errors(mesh, sol, p);

  // Reconstruct p_h and u_h directly and integrate with a dense midpoint
  // grid (independent of PolygonRule).
  const Polygon2D& poly = mesh.cell_polygon(0);
  const HdivBasis2D basis = HdivBasis2D::build(poly);
  Eigen::VectorXd local(4);
  for (int le = 0; le < 4; ++le)
    local(le) = mesh.cell_edge_sign(0, le) * sol.flux(mesh.cell_edge(0, le));
  const int m = 400;
  double fe = 0.0, de = 0.0, se = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Vec2 x((i + 0.5) / m, (j + 0.5) / m);
      const double w = 1.0 / (m * m);
      fe += w * (p.flux(x) - basis.interpolate(local, x)).squaredNorm();
      double div_h = 0.0;
      for (int le = 0; le < 4; ++le) div_h += local(le) * basis.divergence(le);
      de += w * std::pow(p.flux_divergence(x) - div_h, 2);
      se += w * std::pow(p.solution(x) - sol.scalar(0), 2);
    }
  CHECK(err.flux == doctest::Approx(std::sqrt(fe)).epsilon(1e-4));
  CHECK(err.flux_divergence == doctest::Approx(std::sqrt(de)).epsilon(1e-4));
  CHECK(err.scalar == doctest::Approx(std::sqrt(se)).epsilon(1e-4));
}

TEST_CASE("local conservation holds after solving") {
  const Mesh2D mesh = generate_hex_dual_mesh(8);
  const PoissonProblem p = smooth_problem();
  const SaddleSystem sys = assemble(mesh, p);
  const MixedSolution sol = solve(sys);
  CHECK(sol.residual < 1e-10);
  CHECK(conservation_residual(mesh, sol, sys) < 1e-9);

  // Discrete commuting analog: div p_h is the cell mean of -f.
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const Polygon2D& poly = mesh.cell_polygon(c);
    double div_h = 0.0;
    for (size_t le = 0; le < mesh.cell(c).size(); ++le)
      div_h += mesh.cell_edge_sign(c, le) * sol.flux(mesh.cell_edge(c, le)) *
               poly.edge_length(le) / poly.area();
    const double mean_f = cell_mean(poly, p.source);
    CHECK(div_h == doctest::Approx(-mean_f).epsilon(1e-8));
  }
}

TEST_CASE("rough problem setup is self-consistent") {
  const PoissonProblem p = rough_problem();
  std::mt19937 rng(167);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec2 x(unit(rng), unit(rng));
    // flux = grad u by finite differences.
    const Vec2 fd = oracle::fd_gradient(p.solution, x, 1e-7);
    CHECK((p.flux(x) - fd).norm() < 1e-5 * std::max(1.0, fd.norm()));
    // div p = -1 everywhere.
    const double div_fd = oracle::fd_divergence(p.flux, x, 1e-6);
    CHECK(std::abs(div_fd + 1.0) < 1e-4);
  }
}

TEST_CASE("convergence smoke test and csv layout") {
  const ConvergenceReport report =
      convergence_study(MeshFamily::Quad, {4, 8}, smooth_problem(), {});
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[1].errors.flux < report.rows[0].errors.flux);
  CHECK(report.rows[1].order_flux > 0.5);

  std::stringstream ss;
  report.write_csv(ss);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "N,h,err_p,ord_p,err_divp,ord_divp,err_u,ord_u");

  const ConvergenceReport rough =
      convergence_study(MeshFamily::Quad, {4, 8}, rough_problem(), {});
  std::stringstream ss2;
  rough.write_csv(ss2);
  std::getline(ss2, header);
  CHECK(header == "N,h,err_p,ord_p,err_u,ord_u");
}

TEST_SUITE_END();
