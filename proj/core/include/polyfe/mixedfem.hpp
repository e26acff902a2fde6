#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <iosfwd>

#include "polyfe/element2d.hpp"
#include "polyfe/mesh2d.hpp"
#include "polyfe/meshgen.hpp"

namespace polyfe {

/// Dirichlet problem -div(grad u) = f on the unit square, in mixed form
/// with the flux p = grad u:
///   p - grad u = 0,   div p = -f,   u = g on the boundary.
struct PoissonProblem {
  std::function<double(const Vec2&)> source;           // f
  std::function<double(const Vec2&)> boundary;         // g
  std::function<double(const Vec2&)> solution;         // u
  std::function<Vec2(const Vec2&)> flux;               // p
  std::function<double(const Vec2&)> flux_divergence;  // div p = -f
  // When div p is constant it is reproduced exactly and its error column
  // carries no information.
  bool divergence_is_constant = false;
};

/// u = sin(pi x) sin(pi y); homogeneous boundary data.
PoissonProblem smooth_problem();
/// u = sqrt((rho - x)/2) - rho^2/4 with rho = |x|; u is in H^{3/2} with a
/// corner singularity at the origin, f = 1, inhomogeneous boundary data.
PoissonProblem rough_problem();

/// Saddle-point blocks of the mixed discretization: one flux unknown per
/// global edge (mean normal flux along the fixed edge direction), one
/// scalar unknown per cell.
///
///   [ mass  div^t ] [ flux ]   [ boundary ]
///   [ div      0  ] [  u   ] = [  -load   ]
///
/// The divergence block holds signed edge lengths; the boundary vector
/// carries the Dirichlet edge integrals of g.
struct SaddleSystem {
  Eigen::SparseMatrix<double> mass;        // #E x #E, SPD
  Eigen::SparseMatrix<double> divergence;  // #cells x #E
  Eigen::VectorXd boundary;                // #E
  Eigen::VectorXd load;                    // #cells, cell integrals of f
};

SaddleSystem assemble(const Mesh2D& mesh, const PoissonProblem& problem, int quadrature_degree = 10);

struct MixedSolution {
  Eigen::VectorXd flux;    // per global edge
  Eigen::VectorXd scalar;  // per cell
  double residual = 0.0;   // relative residual of the saddle system
};

MixedSolution solve(const SaddleSystem& system);

struct ErrorTriple {
  double flux = 0.0;
  double flux_divergence = 0.0;
  double scalar = 0.0;
};

/// Cellwise L^2 errors against the exact fields of the problem.
ErrorTriple compute_errors(const Mesh2D& mesh, const MixedSolution& solution,
                           const PoissonProblem& problem, int quadrature_degree = 10);

/// Max over cells of | int_dT p_h . n - int_T f |; zero up to solver
/// tolerance by the structure of the divergence block.
double conservation_residual(const Mesh2D& mesh, const MixedSolution& solution,
                             const SaddleSystem& system);

enum class MeshFamily { Quad, HexDual, Cvt };
MeshFamily parse_mesh_family(const std::string& name);

struct StudyOptions {
  double distortion = 0.3;  // quad family
  CvtOptions cvt;           // cvt family
  int quadrature_degree = 10;
};

struct ConvergenceRow {
  int n = 0;
  double h = 0.0;
  ErrorTriple errors;
  // Observed orders against the previous row; NaN on the first row.
  double order_flux = 0.0, order_divergence = 0.0, order_scalar = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  bool include_divergence = true;

  const ConvergenceRow& finest() const { return rows.back(); }
  void write_csv(std::ostream& out) const;
};

ConvergenceReport convergence_study(MeshFamily family, const std::vector<int>& levels,
                                    const PoissonProblem& problem, const StudyOptions& options = {});

}  // namespace polyfe
