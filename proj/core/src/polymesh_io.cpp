#include "polyfe/polymesh_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "polyfe/errors.hpp"

namespace polyfe {

namespace {

// Whitespace-token reader that tracks line numbers and skips blank and
// comment lines.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  int line() const { return line_; }

  bool next(std::vector<std::string>& tokens) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_;
      tokens.clear();
      std::istringstream ss(raw);
      std::string tok;
      while (ss >> tok) {
        if (tok[0] == '#') break;
        tokens.push_back(tok);
      }
      if (!tokens.empty()) return true;
    }
    return false;
  }

  std::vector<std::string> expect(size_t min_tokens, const std::string& what) {
    std::vector<std::string> tokens;
    if (!next(tokens)) throw IoError("unexpected end of file, expected " + what, line_);
    if (tokens.size() < min_tokens)
      throw IoError("expected " + what + ", got " + std::to_string(tokens.size()) + " tokens", line_);
    return tokens;
  }

  int to_int(const std::string& tok) const {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
      throw IoError("expected an integer, got '" + tok + "'", line_);
    return value;
  }

  double to_double(const std::string& tok) const {
    try {
      size_t pos = 0;
      const double value = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      return value;
    } catch (const std::exception&) {
      throw IoError("expected a number, got '" + tok + "'", line_);
    }
  }

 private:
  std::istream& in_;
  int line_ = 0;
};

}  // namespace

PolyMeshFile read_polymesh(std::istream& in) {
  LineReader reader(in);
  const auto header = reader.expect(2, "header 'POLYMESH <dim>'");
  if (header[0] != "POLYMESH")
    throw IoError("expected header 'POLYMESH 2' or 'POLYMESH 3'", reader.line());
  const int dim = reader.to_int(header[1]);
  if (dim != 2 && dim != 3) throw IoError("unsupported dimension " + header[1], reader.line());

  const int nv = reader.to_int(reader.expect(1, "vertex count")[0]);
  if (nv < 0) throw IoError("negative vertex count", reader.line());

  PolyMeshFile file;
  file.dimension = dim;

  if (dim == 2) {
    std::vector<Vec2> verts(nv);
    for (int i = 0; i < nv; ++i) {
      const auto t = reader.expect(2, "vertex coordinates 'x y'");
      verts[i] = Vec2(reader.to_double(t[0]), reader.to_double(t[1]));
    }
    const int ncells = reader.to_int(reader.expect(1, "cell count")[0]);
    std::vector<std::vector<int>> cells(ncells);
    for (int c = 0; c < ncells; ++c) {
      const auto t = reader.expect(1, "cell loop '<k> i0 ... i{k-1}'");
      const int k = reader.to_int(t[0]);
      if (k < 3) throw IoError("cell with fewer than 3 vertices", reader.line());
      if (static_cast<int>(t.size()) != k + 1)
        throw IoError("cell loop length mismatch: expected " + std::to_string(k) + " indices",
                      reader.line());
      for (int m = 0; m < k; ++m) {
        const int idx = reader.to_int(t[m + 1]);
        if (idx < 0 || idx >= nv) throw IoError("vertex index out of range", reader.line());
        cells[c].push_back(idx);
      }
    }
    try {
      file.mesh.emplace(std::move(verts), std::move(cells));
    } catch (const GeometryError& err) {
      throw IoError(std::string("invalid mesh: ") + err.what());
    }
    return file;
  }

  std::vector<Vec3> verts(nv);
  for (int i = 0; i < nv; ++i) {
    const auto t = reader.expect(3, "vertex coordinates 'x y z'");
    verts[i] = Vec3(reader.to_double(t[0]), reader.to_double(t[1]), reader.to_double(t[2]));
  }
  const int ncells = reader.to_int(reader.expect(1, "cell count")[0]);
  for (int c = 0; c < ncells; ++c) {
    const int nfaces = reader.to_int(reader.expect(1, "face count")[0]);
    if (nfaces < 4) throw IoError("cell with fewer than 4 faces", reader.line());
    std::vector<std::vector<int>> faces(nfaces);
    std::vector<int> used(nv, -1);
    for (int f = 0; f < nfaces; ++f) {
      const auto t = reader.expect(1, "face loop '<k> i0 ... i{k-1}'");
      const int k = reader.to_int(t[0]);
      if (k < 3) throw IoError("face with fewer than 3 vertices", reader.line());
      if (static_cast<int>(t.size()) != k + 1)
        throw IoError("face loop length mismatch: expected " + std::to_string(k) + " indices",
                      reader.line());
      for (int m = 0; m < k; ++m) {
        const int idx = reader.to_int(t[m + 1]);
        if (idx < 0 || idx >= nv) throw IoError("vertex index out of range", reader.line());
        faces[f].push_back(idx);
      }
    }
    // Strip to the vertices this cell actually uses.
    std::vector<Vec3> cell_verts;
    for (auto& loop : faces)
      for (int& idx : loop) {
        if (used[idx] == -1) {
          used[idx] = static_cast<int>(cell_verts.size());
          cell_verts.push_back(verts[idx]);
        }
        idx = used[idx];
      }
    try {
      file.cells.emplace_back(std::move(cell_verts), std::move(faces));
    } catch (const GeometryError& err) {
      throw IoError("invalid cell " + std::to_string(c) + ": " + err.what());
    }
  }
  return file;
}

PolyMeshFile read_polymesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_polymesh(in);
}

namespace {

void write_coord(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

void write_polymesh(std::ostream& out, const Mesh2D& mesh) {
  out << "POLYMESH 2\n" << mesh.num_vertices() << "\n";
  for (const Vec2& v : mesh.vertices()) {
    write_coord(out, v.x());
    out << ' ';
    write_coord(out, v.y());
    out << '\n';
  }
  out << mesh.num_cells() << "\n";
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto& loop = mesh.cell(c);
    out << loop.size();
    for (int v : loop) out << ' ' << v;
    out << '\n';
  }
}

void write_polymesh(std::ostream& out, const std::vector<Polyhedron>& cells) {
  int nv = 0;
  for (const Polyhedron& p : cells) nv += p.num_vertices();
  out << "POLYMESH 3\n" << nv << "\n";
  for (const Polyhedron& p : cells)
    for (const Vec3& v : p.vertices()) {
      write_coord(out, v.x());
      out << ' ';
      write_coord(out, v.y());
      out << ' ';
      write_coord(out, v.z());
      out << '\n';
    }
  out << cells.size() << "\n";
  int offset = 0;
  for (const Polyhedron& p : cells) {
    out << p.num_faces() << "\n";
    for (int f = 0; f < p.num_faces(); ++f) {
      const auto& loop = p.face(f);
      out << loop.size();
      for (int v : loop) out << ' ' << (v + offset);
      out << '\n';
    }
    offset += p.num_vertices();
  }
}

void write_polymesh(const std::filesystem::path& path, const Mesh2D& mesh) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_polymesh(out, mesh);
}

void write_polymesh(const std::filesystem::path& path, const std::vector<Polyhedron>& cells) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_polymesh(out, cells);
}

}  // namespace polyfe
