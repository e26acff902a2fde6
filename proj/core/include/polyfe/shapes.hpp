#pragma once

#include <string>
#include <vector>

#include "polyfe/polyhedron.hpp"

namespace polyfe {

// Reference cells used throughout the test and verification suites.

Polyhedron make_tetrahedron();             // vertices 0, e1, e2, e3
Polyhedron make_cube();                    // unit cube
Polyhedron make_square_pyramid();          // unit square base, apex over the center
Polyhedron make_triangular_prism();        // base (0,0),(1,0),(0,1), height 1
Polyhedron make_regular_octahedron();      // vertices (0,0,+-1), (+-1,0,0), (0,+-1,0)
Polyhedron make_sheared_parallelepiped();  // unit cube under a shear map

const std::vector<std::string>& builtin_shape_names();
Polyhedron make_shape(const std::string& name);

}  // namespace polyfe
