#pragma once

#include <vector>

#include "polyfe/mesh2d.hpp"

namespace polyfe {

/// N x N quadrilateral mesh of the unit square. Interior grid vertices are
/// displaced by a smooth sinusoidal field of amplitude `distortion` / N;
/// boundary vertices stay fixed. A distortion that makes any cell
/// non-convex is rejected with the offending cell index in the message.
Mesh2D generate_quad_mesh(int n, double distortion = 0.0);

/// Dual of the uniform N x N right-triangle mesh, with dual vertices at
/// triangle centroids and boundary closure through edge midpoints: mostly
/// hexagons, pentagons along the boundary, and corner quadrilaterals.
/// Produces (N+1)^2 cells.
Mesh2D generate_hex_dual_mesh(int n);

struct CvtOptions {
  int lloyd_iterations = 64;
  unsigned seed = 0;
  double jitter = 0.5;  // initial offset, relative to the grid spacing
};

/// Centroidal Voronoi tessellation with N^2 generators in the unit square:
/// seeded jittered grid, Lloyd iterations on the clipped Voronoi cells.
/// With zero jitter and zero iterations this is the uniform N x N grid.
/// When `energy_log` is given, the quantization energy
/// sum_i int_{V_i} |x - g_i|^2 is recorded before every relocation step.
Mesh2D generate_cvt_mesh(int n, const CvtOptions& options = {},
                         std::vector<double>* energy_log = nullptr);

}  // namespace polyfe
