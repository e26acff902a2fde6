#include "polyfe/shapes.hpp"

#include <stdexcept>

namespace polyfe {

Polyhedron make_tetrahedron() {
  std::vector<Vec3> v = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  std::vector<std::vector<int>> f = {{0, 2, 1}, {0, 3, 2}, {0, 1, 3}, {1, 2, 3}};
  return Polyhedron(std::move(v), std::move(f));
}

Polyhedron make_cube() {
  std::vector<Vec3> v = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                         {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
  std::vector<std::vector<int>> f = {{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4},
                                     {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
  return Polyhedron(std::move(v), std::move(f));
}

Polyhedron make_square_pyramid() {
  std::vector<Vec3> v = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0.5, 0.5, 1}};
  std::vector<std::vector<int>> f = {{0, 3, 2, 1}, {0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
  return Polyhedron(std::move(v), std::move(f));
}

Polyhedron make_triangular_prism() {
  std::vector<Vec3> v = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {0, 1, 1}};
  std::vector<std::vector<int>> f = {{0, 2, 1}, {3, 4, 5}, {0, 1, 4, 3}, {1, 2, 5, 4}, {2, 0, 3, 5}};
  return Polyhedron(std::move(v), std::move(f));
}

Polyhedron make_regular_octahedron() {
  std::vector<Vec3> v = {{0, 0, -1}, {1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}, {0, 0, 1}};
  std::vector<std::vector<int>> f = {{0, 2, 1}, {0, 3, 2}, {0, 4, 3}, {0, 1, 4},
                                     {5, 1, 2}, {5, 2, 3}, {5, 3, 4}, {5, 4, 1}};
  return Polyhedron(std::move(v), std::move(f));
}

Polyhedron make_sheared_parallelepiped() {
  const Vec3 a(1, 0, 0), b(0.35, 1, 0), c(0.2, 0.15, 1);
  const Vec3 o = Vec3::Zero();
  std::vector<Vec3> v = {o, a, a + b, b, c, a + c, a + b + c, b + c};
  std::vector<std::vector<int>> f = {{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4},
                                     {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
  return Polyhedron(std::move(v), std::move(f));
}

const std::vector<std::string>& builtin_shape_names() {
  static const std::vector<std::string> names = {"tetrahedron", "cube",       "pyramid",
                                                 "prism",       "octahedron", "parallelepiped"};
  return names;
}

Polyhedron make_shape(const std::string& name) {
  if (name == "tetrahedron") return make_tetrahedron();
  if (name == "cube") return make_cube();
  if (name == "pyramid") return make_square_pyramid();
  if (name == "prism") return make_triangular_prism();
  if (name == "octahedron") return make_regular_octahedron();
  if (name == "parallelepiped") return make_sheared_parallelepiped();
  throw std::invalid_argument("unknown shape: " + name);
}

}  // namespace polyfe
