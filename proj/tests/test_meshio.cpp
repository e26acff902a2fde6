#include <doctest.h>

#include <sstream>

#include "polyfe/polymesh_io.hpp"
#include "polyfe/shapes.hpp"

using namespace polyfe;

TEST_SUITE_BEGIN("meshio");

TEST_CASE("2d roundtrip") {
  std::vector<Vec2> verts = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}};
  std::vector<std::vector<int>> cells = {{0, 1, 4, 3}, {1, 2, 5, 4}};
  const Mesh2D mesh(verts, cells);
  CHECK(mesh.num_edges() == 7);

  std::stringstream ss;
  write_polymesh(ss, mesh);
  const PolyMeshFile file = read_polymesh(ss);
  REQUIRE(file.dimension == 2);
  REQUIRE(file.mesh.has_value());
  CHECK(file.mesh->num_cells() == 2);
  CHECK(file.mesh->num_vertices() == 6);
  CHECK(file.mesh->num_edges() == 7);
  for (int v = 0; v < 6; ++v) CHECK((file.mesh->vertex(v) - verts[v]).norm() == 0.0);

  // The shared edge is interior with opposite traversal signs.
  int interior = 0;
  for (const MeshEdge& e : file.mesh->edges())
    if (!e.boundary()) {
      ++interior;
      CHECK(e.sign[0] * e.sign[1] == -1);
    }
  CHECK(interior == 1);
}

TEST_CASE("3d roundtrip preserves the polyhedron") {
  std::stringstream ss;
  write_polymesh(ss, std::vector<Polyhedron>{make_square_pyramid(), make_cube()});
  const PolyMeshFile file = read_polymesh(ss);
  REQUIRE(file.dimension == 3);
  REQUIRE(file.cells.size() == 2);
  CHECK(file.cells[0].num_vertices() == 5);
  CHECK(file.cells[0].num_faces() == 5);
  CHECK(file.cells[1].num_edges() == 12);
  CHECK(file.cells[1].volume() == doctest::Approx(1.0));
}

TEST_CASE("comments and blank lines are skipped") {
  std::stringstream ss(R"(# a comment
POLYMESH 2

3
0 0   # origin
1 0
0 1
1
3 0 1 2
)");
  const PolyMeshFile file = read_polymesh(ss);
  CHECK(file.mesh->num_cells() == 1);
}

TEST_CASE("parse errors carry line numbers") {
  const auto expect_line = [](const std::string& text, int line, const char* needle) {
    std::stringstream ss(text);
    try {
      read_polymesh(ss);
      FAIL("expected IoError");
    } catch (const IoError& err) {
      CHECK(err.line() == line);
      CHECK(std::string(err.what()).find(needle) != std::string::npos);
    }
  };

  expect_line("BOGUS 2\n", 1, "POLYMESH");
  expect_line("POLYMESH 4\n", 1, "dimension");
  expect_line("POLYMESH 2\n2\n0 0\n", 3, "vertex coordinates");
  expect_line("POLYMESH 2\n3\n0 0\n1 0\n0 1\n1\n3 0 1\n", 7, "mismatch");
  expect_line("POLYMESH 2\n3\n0 0\n1 x\n0 1\n1\n3 0 1 2\n", 4, "number");
  expect_line("POLYMESH 2\n3\n0 0\n1 0\n0 1\n1\n3 0 1 7\n", 7, "out of range");
}

TEST_CASE("geometric validity failures name the cell") {
  // Clockwise cell loop.
  std::stringstream ss("POLYMESH 2\n3\n0 0\n1 0\n0 1\n1\n3 0 2 1\n");
  CHECK_THROWS_WITH_AS(read_polymesh(ss), doctest::Contains("invalid mesh"), IoError);

  // A 3D cell violating the parallelogram requirement is named per face.
  std::stringstream hex(R"(POLYMESH 3
8
0 0 0
1 0 0
1 1 0
0 1 0
0.2 0.2 1
0.8 0.2 1
0.8 0.8 1
0.2 0.8 1
1
6
4 0 3 2 1
4 4 5 6 7
4 0 1 5 4
4 1 2 6 5
4 2 3 7 6
4 3 0 4 7
)");
  CHECK_THROWS_WITH_AS(read_polymesh(hex), doctest::Contains("not a parallelogram"), IoError);
}

TEST_SUITE_END();
