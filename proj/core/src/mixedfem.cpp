#include "polyfe/mixedfem.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <ostream>

namespace polyfe {

PoissonProblem smooth_problem() {
  PoissonProblem p;
  p.solution = [](const Vec2& x) { return std::sin(M_PI * x.x()) * std::sin(M_PI * x.y()); };
  p.source = [](const Vec2& x) {
    return 2.0 * M_PI * M_PI * std::sin(M_PI * x.x()) * std::sin(M_PI * x.y());
  };
  p.boundary = [](const Vec2&) { return 0.0; };
  p.flux = [](const Vec2& x) {
    return Vec2(M_PI * std::cos(M_PI * x.x()) * std::sin(M_PI * x.y()),
                M_PI * std::sin(M_PI * x.x()) * std::cos(M_PI * x.y()));
  };
  p.flux_divergence = [](const Vec2& x) {
    return -2.0 * M_PI * M_PI * std::sin(M_PI * x.x()) * std::sin(M_PI * x.y());
  };
  return p;
}

PoissonProblem rough_problem() {
  PoissonProblem p;
  const auto u = [](const Vec2& x) {
    const double rho = x.norm();
    return std::sqrt(0.5 * (rho - x.x())) - 0.25 * rho * rho;
  };
  p.solution = u;
  p.source = [](const Vec2&) { return 1.0; };
  p.boundary = u;
  p.flux = [](const Vec2& x) {
    const double rho = x.norm();
    const double s = std::sqrt(0.5 * (rho - x.x()));
    // The singular part is harmonic; its gradient stays integrable.
    return Vec2((x.x() / rho - 1.0) / (4.0 * s) - 0.5 * x.x(),
                (x.y() / rho) / (4.0 * s) - 0.5 * x.y());
  };
  p.flux_divergence = [](const Vec2&) { return -1.0; };
  p.divergence_is_constant = true;
  return p;
}

SaddleSystem assemble(const Mesh2D& mesh, const PoissonProblem& problem, int quadrature_degree) {
  const int ne = mesh.num_edges();
  const int nc = mesh.num_cells();

  SaddleSystem sys;
  sys.boundary = Eigen::VectorXd::Zero(ne);
  sys.load = Eigen::VectorXd::Zero(nc);

  std::vector<Eigen::Triplet<double>> mass_entries;
  std::vector<Eigen::Triplet<double>> div_entries;

  for (int c = 0; c < nc; ++c) {
    const Polygon2D& poly = mesh.cell_polygon(c);
    const HdivBasis2D basis = HdivBasis2D::build(poly);
    const int k = basis.size();

    Eigen::MatrixXd mass_local = Eigen::MatrixXd::Zero(k, k);
    const PolygonRule rule(poly, quadrature_degree);
    for (size_t q = 0; q < rule.points().size(); ++q) {
      const Eigen::Matrix2Xd values = basis.eval_all(rule.points()[q]);
      mass_local += rule.weights()(q) * values.transpose() * values;
      sys.load(c) += rule.weights()(q) * problem.source(rule.points()[q]);
    }

    for (int i = 0; i < k; ++i) {
      const int gi = mesh.cell_edge(c, i);
      const double si = mesh.cell_edge_sign(c, i);
      div_entries.emplace_back(c, gi, si * poly.edge_length(i));
      for (int j = 0; j < k; ++j) {
        const int gj = mesh.cell_edge(c, j);
        const double sj = mesh.cell_edge_sign(c, j);
        mass_entries.emplace_back(gi, gj, si * sj * mass_local(i, j));
      }
    }

    // Dirichlet data enters through the boundary edge integrals of g.
    for (int i = 0; i < k; ++i) {
      const int gi = mesh.cell_edge(c, i);
      if (!mesh.edge(gi).boundary()) continue;
      const EdgeRule erule = edge_rule(poly.vertex(i), poly.vertex(i + 1), 10);
      sys.boundary(gi) +=
          mesh.cell_edge_sign(c, i) * erule.integrate([&](const Vec2& x) { return problem.boundary(x); });
    }
  }

  sys.mass.resize(ne, ne);
  sys.mass.setFromTriplets(mass_entries.begin(), mass_entries.end());
  sys.divergence.resize(nc, ne);
  sys.divergence.setFromTriplets(div_entries.begin(), div_entries.end());
  return sys;
}

MixedSolution solve(const SaddleSystem& system) {
  const int ne = static_cast<int>(system.mass.rows());
  const int nc = static_cast<int>(system.divergence.rows());
  const int n = ne + nc;

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(system.mass.nonZeros() + 2 * system.divergence.nonZeros());
  for (int k = 0; k < system.mass.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(system.mass, k); it; ++it)
      entries.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
  for (int k = 0; k < system.divergence.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(system.divergence, k); it; ++it) {
      entries.emplace_back(ne + static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
      entries.emplace_back(static_cast<int>(it.col()), ne + static_cast<int>(it.row()), it.value());
    }

  Eigen::SparseMatrix<double> saddle(n, n);
  saddle.setFromTriplets(entries.begin(), entries.end());

  Eigen::VectorXd rhs(n);
  rhs.head(ne) = system.boundary;
  rhs.tail(nc) = -system.load;

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(saddle);
  lu.factorize(saddle);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("saddle-point factorization failed: singular system");
  const Eigen::VectorXd x = lu.solve(rhs);

  MixedSolution sol;
  sol.flux = x.head(ne);
  sol.scalar = x.tail(nc);
  sol.residual = (saddle * x - rhs).norm() / std::max(1.0, rhs.norm());
  return sol;
}

ErrorTriple compute_errors(const Mesh2D& mesh, const MixedSolution& solution,
                           const PoissonProblem& problem, int quadrature_degree) {
  ErrorTriple err;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const Polygon2D& poly = mesh.cell_polygon(c);
    const HdivBasis2D basis = HdivBasis2D::build(poly);
    const int k = basis.size();

    Eigen::VectorXd local(k);
    double div_h = 0.0;
    for (int i = 0; i < k; ++i) {
      local(i) = mesh.cell_edge_sign(c, i) * solution.flux(mesh.cell_edge(c, i));
      div_h += local(i) * basis.divergence(i);
    }
    const double u_h = solution.scalar(c);

    const PolygonRule rule(poly, quadrature_degree);
    for (size_t q = 0; q < rule.points().size(); ++q) {
      const Vec2& x = rule.points()[q];
      const double w = rule.weights()(q);
      const Vec2 p_h = basis.eval_all(x) * local;
      err.flux += w * (problem.flux(x) - p_h).squaredNorm();
      const double dd = problem.flux_divergence(x) - div_h;
      err.flux_divergence += w * dd * dd;
      const double du = problem.solution(x) - u_h;
      err.scalar += w * du * du;
    }
  }
  err.flux = std::sqrt(err.flux);
  err.flux_divergence = std::sqrt(err.flux_divergence);
  err.scalar = std::sqrt(err.scalar);
  return err;
}

double conservation_residual(const Mesh2D& mesh, const MixedSolution& solution,
                             const SaddleSystem& system) {
  const Eigen::VectorXd net = system.divergence * solution.flux + system.load;
  double worst = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) worst = std::max(worst, std::abs(net(c)));
  return worst;
}

MeshFamily parse_mesh_family(const std::string& name) {
  if (name == "quad") return MeshFamily::Quad;
  if (name == "hexdual") return MeshFamily::HexDual;
  if (name == "cvt") return MeshFamily::Cvt;
  throw std::invalid_argument("unknown mesh family: " + name);
}

ConvergenceReport convergence_study(MeshFamily family, const std::vector<int>& levels,
                                    const PoissonProblem& problem, const StudyOptions& options) {
  if (levels.empty()) throw std::invalid_argument("convergence_study: no levels given");

  ConvergenceReport report;
  report.include_divergence = !problem.divergence_is_constant;

  for (size_t l = 0; l < levels.size(); ++l) {
    const int n = levels[l];
    Mesh2D mesh = [&] {
      switch (family) {
        case MeshFamily::Quad: return generate_quad_mesh(n, options.distortion);
        case MeshFamily::HexDual: return generate_hex_dual_mesh(n);
        default: return generate_cvt_mesh(n, options.cvt);
      }
    }();

    const SaddleSystem system = assemble(mesh, problem, options.quadrature_degree);
    const MixedSolution solution = solve(system);

    ConvergenceRow row;
    row.n = n;
    row.h = mesh.max_diameter();
    row.errors = compute_errors(mesh, solution, problem, options.quadrature_degree);

    if (l == 0) {
      row.order_flux = row.order_divergence = row.order_scalar = std::nan("");
    } else {
      const ConvergenceRow& prev = report.rows.back();
      const double ratio = std::log(static_cast<double>(n) / prev.n);
      row.order_flux = std::log(prev.errors.flux / row.errors.flux) / ratio;
      row.order_divergence =
          std::log(prev.errors.flux_divergence / row.errors.flux_divergence) / ratio;
      row.order_scalar = std::log(prev.errors.scalar / row.errors.scalar) / ratio;
    }
    report.rows.push_back(row);
  }
  return report;
}

void ConvergenceReport::write_csv(std::ostream& out) const {
  const auto num = [](double v, const char* fmt) {
    char buf[40];
    std::snprintf(buf, sizeof buf, fmt, v);
    return std::string(buf);
  };

  out << "N,h,err_p,ord_p";
  if (include_divergence) out << ",err_divp,ord_divp";
  out << ",err_u,ord_u\n";
  for (const ConvergenceRow& row : rows) {
    out << row.n << ',' << num(row.h, "%.6e");
    const auto column = [&](double err, double ord) {
      out << ',' << num(err, "%.6e") << ',';
      if (!std::isnan(ord)) out << num(ord, "%.4f");
    };
    column(row.errors.flux, row.order_flux);
    if (include_divergence) column(row.errors.flux_divergence, row.order_divergence);
    column(row.errors.scalar, row.order_scalar);
    out << '\n';
  }
}

}  // namespace polyfe
