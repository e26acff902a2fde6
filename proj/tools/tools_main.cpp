// Command line front end: mesh generation, coordinate and basis inspection,
// element verification, and mixed-method convergence studies.
//
// Exit codes: 0 success, 1 verification failure, 2 input error.
#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "polyfe/adjacency.hpp"
#include "polyfe/element2d.hpp"
#include "polyfe/element3d.hpp"
#include "polyfe/meshgen.hpp"
#include "polyfe/mixedfem.hpp"
#include "polyfe/polymesh_io.hpp"
#include "polyfe/shapes.hpp"

using json = nlohmann::json;
using namespace polyfe;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;

Vec2 parse_point2(const std::string& text) {
  Vec2 p;
  if (std::sscanf(text.c_str(), "%lf,%lf", &p.x(), &p.y()) != 2)
    throw CLI::ValidationError("--point", "expected 'x,y', got '" + text + "'");
  return p;
}

Vec3 parse_point3(const std::string& text) {
  Vec3 p;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf", &p.x(), &p.y(), &p.z()) != 3)
    throw CLI::ValidationError("--point", "expected 'x,y,z', got '" + text + "'");
  return p;
}

json verification_to_json(const CellVerification& v) {
  json j;
  j["vertices"] = v.num_vertices;
  j["edges"] = v.num_edges;
  j["faces"] = v.num_faces;
  j["euler"] = v.euler_ok;
  j["type"] = to_string(v.type.type);
  j["type_center_residual"] = v.type.center_residual;
  j["adjacency"] = {{"orthogonal", v.adjacency_orthogonal},
                    {"constant_kernels", v.adjacency_kernels_ok},
                    {"rank_face_gram", v.rank_face_gram},
                    {"rank_vertex_gram", v.rank_vertex_gram}};
  j["duality"] = {{"max_face_residual", v.duality.max_face_residual},
                  {"max_edge_residual", v.duality.max_edge_residual},
                  {"max_face_spread", v.duality.max_face_spread},
                  {"max_edge_spread", v.duality.max_edge_spread}};
  j["exactness"] = {{"rank_hcurl_basis", v.exactness.rank_hcurl_basis},
                    {"rank_hdiv_basis", v.exactness.rank_hdiv_basis},
                    {"rank_gradients", v.exactness.rank_gradients},
                    {"rank_curls", v.exactness.rank_curls},
                    {"gradient_fit_residual", v.exactness.gradient_fit_residual},
                    {"gradient_fit_curl_residual", v.exactness.gradient_fit_curl_residual},
                    {"curl_fit_residual", v.exactness.curl_fit_residual},
                    {"dimensions_ok", v.exactness.dimensions_ok()}};
  j["inclusion"] = {{"hcurl_residuals", v.inclusion.hcurl_residuals},
                    {"hdiv_residuals", v.inclusion.hdiv_residuals},
                    {"max_residual", v.inclusion.max_residual()}};
  j["tangential_trace_residual"] = v.tangential_trace;
  j["interior_combination_residual"] = v.interior_combination_residual;
  j["passed"] = v.passed();
  return j;
}

std::vector<Polyhedron> load_polyhedra(const std::string& file, const std::string& shape) {
  if (!shape.empty()) {
    std::vector<Polyhedron> cells;
    cells.push_back(make_shape(shape));
    return cells;
  }
  PolyMeshFile parsed = read_polymesh(std::filesystem::path(file));
  if (parsed.dimension != 3)
    throw IoError("expected a POLYMESH 3 file with polyhedral cells");
  return std::move(parsed.cells);
}

Mesh2D load_mesh2d(const std::string& file) {
  PolyMeshFile parsed = read_polymesh(std::filesystem::path(file));
  if (parsed.dimension != 2) throw IoError("expected a POLYMESH 2 file");
  return std::move(*parsed.mesh);
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  return file;
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
  CLI::App app{"Minimal-degree H(div) and H(curl) elements on polytopal meshes"};
  app.require_subcommand(1);

  // meshgen ----------------------------------------------------------------
  auto* cmd_meshgen = app.add_subcommand("meshgen", "Generate a 2D mesh of the unit square");
  std::string mg_family = "quad", mg_out;
  int mg_n = 8, mg_iters = 64;
  unsigned mg_seed = 0;
  double mg_distortion = 0.3, mg_jitter = 0.5;
  cmd_meshgen->add_option("--family", mg_family, "Mesh family")
      ->check(CLI::IsMember({"quad", "hexdual", "cvt"}));
  cmd_meshgen->add_option("--n", mg_n, "Resolution (mesh is N x N)")->required();
  cmd_meshgen->add_option("--distortion", mg_distortion, "Quad vertex displacement in [0, 0.5)");
  cmd_meshgen->add_option("--seed", mg_seed, "Random seed (cvt)");
  cmd_meshgen->add_option("--iters", mg_iters, "Lloyd iterations (cvt)");
  cmd_meshgen->add_option("--jitter", mg_jitter, "Initial generator jitter (cvt)");
  cmd_meshgen->add_option("-o,--output", mg_out, "Output file")->required();
  cmd_meshgen->callback([&] {
    Mesh2D mesh = [&] {
      switch (parse_mesh_family(mg_family)) {
        case MeshFamily::Quad: return generate_quad_mesh(mg_n, mg_distortion);
        case MeshFamily::HexDual: return generate_hex_dual_mesh(mg_n);
        default:
          return generate_cvt_mesh(
              mg_n, {.lloyd_iterations = mg_iters, .seed = mg_seed, .jitter = mg_jitter});
      }
    }();
    write_polymesh(std::filesystem::path(mg_out), mesh);
    std::cout << "wrote " << mg_out << ": " << mesh.num_cells() << " cells, " << mesh.num_edges()
              << " edges, " << mesh.num_vertices() << " vertices\n";

    // Shape-regularity proxies (monitored, not enforced).
    double min_area_ratio = 1e300, min_edge_ratio = 1e300;
    for (int c = 0; c < mesh.num_cells(); ++c) {
      const Polygon2D& poly = mesh.cell_polygon(c);
      min_area_ratio = std::min(min_area_ratio, poly.area() / (poly.diameter() * poly.diameter()));
      for (int e = 0; e < poly.size(); ++e)
        min_edge_ratio = std::min(min_edge_ratio, poly.edge_length(e) / poly.diameter());
    }
    std::cout << "shape regularity: min |T|/h_T^2 = " << min_area_ratio
              << ", min |e|/h_T = " << min_edge_ratio << "\n";
  });

  // gbc-eval ---------------------------------------------------------------
  auto* cmd_gbc = app.add_subcommand("gbc-eval", "Print barycentric coordinates and gradients");
  std::string gbc_file;
  std::vector<std::string> gbc_points;
  int gbc_cell = 0;
  cmd_gbc->add_option("file", gbc_file, "POLYMESH input")->required();
  cmd_gbc->add_option("--point", gbc_points, "Query point 'x,y' or 'x,y,z' (repeatable)")
      ->required();
  cmd_gbc->add_option("--cell", gbc_cell, "Cell index (default 0)");
  cmd_gbc->callback([&] {
    const PolyMeshFile parsed = read_polymesh(std::filesystem::path(gbc_file));
    if (parsed.dimension == 2) {
      const Polygon2D poly = parsed.mesh->cell_polygon(gbc_cell);
      for (const auto& text : gbc_points) {
        const auto bc = wachspress(poly, parse_point2(text));
        std::cout << "point " << text << "\n";
        for (int i = 0; i < poly.size(); ++i)
          std::cout << "  lambda[" << i << "] = " << bc.values[i] << "  grad = ("
                    << bc.gradients[i].x() << ", " << bc.gradients[i].y() << ")\n";
      }
    } else {
      const Polyhedron& poly = parsed.cells.at(gbc_cell);
      for (const auto& text : gbc_points) {
        const auto bc = wachspress(poly, parse_point3(text));
        std::cout << "point " << text << "\n";
        for (int i = 0; i < poly.num_vertices(); ++i)
          std::cout << "  lambda[" << i << "] = " << bc.values[i] << "  grad = ("
                    << bc.gradients[i].x() << ", " << bc.gradients[i].y() << ", "
                    << bc.gradients[i].z() << ")\n";
      }
    }
  });

  // basis2d ----------------------------------------------------------------
  auto* cmd_basis2d = app.add_subcommand("basis2d", "Coefficients and duality of one 2D cell");
  std::string b2_file;
  int b2_cell = 0;
  cmd_basis2d->add_option("file", b2_file, "POLYMESH 2 input")->required();
  cmd_basis2d->add_option("--cell", b2_cell, "Cell index (default 0)");
  cmd_basis2d->callback([&] {
    const Mesh2D mesh = load_mesh2d(b2_file);
    const Polygon2D& poly = mesh.cell_polygon(b2_cell);
    const HdivBasis2D basis = HdivBasis2D::build(poly);
    const int n = basis.size();

    std::cout << "cell " << b2_cell << ": " << n << " edges, area " << poly.area() << "\n";
    std::cout << "coefficients (radial | gradient factors):\n";
    for (int i = 0; i < n; ++i) {
      std::cout << "  q" << i << ": " << basis.radial_coefficient(i) << " |";
      for (int k = 0; k < n; ++k) std::cout << ' ' << basis.gradient_coefficient(i, k);
      std::cout << "\n";
    }

    const Eigen::VectorXd residuals = basis.normal_trace_residuals();
    std::cout << "duality residuals per edge:\n";
    for (int j = 0; j < n; ++j) std::cout << "  edge " << j << ": " << residuals(j) << "\n";
  });

  // basis3d ----------------------------------------------------------------
  auto* cmd_basis3d = app.add_subcommand("basis3d", "Build the 3D bases and report (JSON)");
  std::string b3_file, b3_shape, b3_out;
  cmd_basis3d->add_option("file", b3_file, "POLYMESH 3 input");
  cmd_basis3d->add_option("--shape", b3_shape, "Built-in shape instead of a file")
      ->check(CLI::IsMember(builtin_shape_names()));
  cmd_basis3d->add_option("-o,--output", b3_out, "Output file (default stdout)");
  cmd_basis3d->callback([&] {
    if (b3_file.empty() == b3_shape.empty())
      throw CLI::ValidationError("basis3d", "give either a file or --shape");
    json out;
    out["cells"] = json::array();
    for (const Polyhedron& poly : load_polyhedra(b3_file, b3_shape)) {
      const Element3D elem(poly);
      json cell = verification_to_json(verify_cell(elem));
      const Eigen::MatrixXd& qc = elem.hdiv().curl_coefficients();
      json rows = json::array();
      for (int f = 0; f < qc.rows(); ++f) {
        json row = json::array();
        row.push_back(elem.hdiv().radial_coefficient(f));
        for (int g = 0; g < qc.cols(); ++g) row.push_back(qc(f, g));
        rows.push_back(row);
      }
      cell["hdiv_coefficients"] = rows;
      json arows = json::array(), brows = json::array();
      for (int e = 0; e < elem.hcurl().size(); ++e) {
        json arow = json::array(), brow = json::array();
        for (int i = 0; i < elem.hcurl().vertex_coefficients().cols(); ++i)
          arow.push_back(elem.hcurl().vertex_coefficients()(e, i));
        for (int f = 0; f < elem.hcurl().face_coefficients().cols(); ++f)
          brow.push_back(elem.hcurl().face_coefficients()(e, f));
        arows.push_back(arow);
        brows.push_back(brow);
      }
      cell["hcurl_vertex_coefficients"] = arows;
      cell["hcurl_face_coefficients"] = brows;
      out["cells"].push_back(std::move(cell));
    }
    std::ofstream file;
    open_output(file, b3_out) << out.dump(2) << "\n";
  });

  // verify -----------------------------------------------------------------
  auto* cmd_verify = app.add_subcommand("verify", "Run all element checks on a polytope");
  std::string vf_file, vf_shape, vf_out;
  cmd_verify->add_option("file", vf_file, "POLYMESH 3 input");
  cmd_verify->add_option("--shape", vf_shape, "Built-in shape instead of a file")
      ->check(CLI::IsMember(builtin_shape_names()));
  cmd_verify->add_option("-o,--output", vf_out, "Output file (default stdout)");
  bool verify_failed = false;
  cmd_verify->callback([&] {
    if (vf_file.empty() == vf_shape.empty())
      throw CLI::ValidationError("verify", "give either a file or --shape");
    json out;
    out["cells"] = json::array();
    bool all = true;
    for (const Polyhedron& poly : load_polyhedra(vf_file, vf_shape)) {
      const Element3D elem(poly);
      const CellVerification v = verify_cell(elem);
      all = all && v.passed();
      out["cells"].push_back(verification_to_json(v));
    }
    out["all_passed"] = all;
    std::ofstream file;
    open_output(file, vf_out) << out.dump(2) << "\n";
    verify_failed = !all;
  });

  // convergence --------------------------------------------------------------
  auto* cmd_conv = app.add_subcommand("convergence", "Mixed-method convergence study (CSV)");
  std::string cv_family = "quad", cv_problem = "smooth", cv_levels = "4,8,16,32", cv_out;
  double cv_distortion = 0.3, cv_jitter = 0.5;
  unsigned cv_seed = 0;
  int cv_iters = 64, cv_degree = 10;
  cmd_conv->add_option("--family", cv_family, "Mesh family")
      ->check(CLI::IsMember({"quad", "hexdual", "cvt"}));
  cmd_conv->add_option("--levels", cv_levels, "Comma-separated resolutions, e.g. 4,8,16,32");
  cmd_conv->add_option("--problem", cv_problem, "Test problem")
      ->check(CLI::IsMember({"smooth", "rough"}));
  cmd_conv->add_option("--distortion", cv_distortion, "Quad vertex displacement");
  cmd_conv->add_option("--seed", cv_seed, "Random seed (cvt)");
  cmd_conv->add_option("--iters", cv_iters, "Lloyd iterations (cvt)");
  cmd_conv->add_option("--jitter", cv_jitter, "Initial generator jitter (cvt)");
  cmd_conv->add_option("--quadrature-degree", cv_degree, "Error-norm quadrature degree");
  cmd_conv->add_option("-o,--output", cv_out, "Output CSV (default stdout)");
  cmd_conv->callback([&] {
    std::vector<int> levels;
    for (const auto& token : CLI::detail::split(cv_levels, ','))
      levels.push_back(std::stoi(token));
    StudyOptions options;
    options.distortion = cv_distortion;
    options.cvt = {.lloyd_iterations = cv_iters, .seed = cv_seed, .jitter = cv_jitter};
    options.quadrature_degree = cv_degree;
    const PoissonProblem problem = (cv_problem == "smooth") ? smooth_problem() : rough_problem();
    const ConvergenceReport report =
        convergence_study(parse_mesh_family(cv_family), levels, problem, options);
    std::ofstream file;
    report.write_csv(open_output(file, cv_out));
  });

  // basis-dump ---------------------------------------------------------------
  auto* cmd_dump = app.add_subcommand("basis-dump", "Sample the 2D basis fields on a grid");
  std::string bd_file, bd_out, bd_format = "csv";
  int bd_cell = 0, bd_grid = 20;
  cmd_dump->add_option("file", bd_file, "POLYMESH 2 input")->required();
  cmd_dump->add_option("--cell", bd_cell, "Cell index (default 0)");
  cmd_dump->add_option("--grid", bd_grid, "Grid resolution per axis");
  cmd_dump->add_option("--format", bd_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd_dump->add_option("-o,--output", bd_out, "Output file (default stdout)");
  cmd_dump->callback([&] {
    const Mesh2D mesh = load_mesh2d(bd_file);
    const Polygon2D& poly = mesh.cell_polygon(bd_cell);
    const HdivBasis2D basis = HdivBasis2D::build(poly);
    const std::vector<Vec2> grid = interior_grid(poly, bd_grid * bd_grid, 1e-3);

    std::ofstream file;
    std::ostream& out = open_output(file, bd_out);
    if (bd_format == "csv") {
      out << "i,x,y,qx,qy\n";
      char buf[128];
      for (const Vec2& x : grid) {
        const Eigen::Matrix2Xd values = basis.eval_all(x);
        for (int i = 0; i < basis.size(); ++i) {
          std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%.12g,%.12g\n", i, x.x(), x.y(),
                        values(0, i), values(1, i));
          out << buf;
        }
      }
    } else {
      json samples = json::array();
      for (const Vec2& x : grid) {
        const Eigen::Matrix2Xd values = basis.eval_all(x);
        for (int i = 0; i < basis.size(); ++i)
          samples.push_back({{"i", i},
                             {"x", x.x()},
                             {"y", x.y()},
                             {"qx", values(0, i)},
                             {"qy", values(1, i)}});
      }
      out << json({{"cell", bd_cell}, {"samples", samples}}).dump(2) << "\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }
  return verify_failed ? kExitVerifyFailed : 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const IoError& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return kExitInputError;
  } catch (const GeometryError& err) {
    std::cerr << "invalid geometry: " << err.what() << "\n";
    return kExitInputError;
  } catch (const DomainError& err) {
    std::cerr << "domain error: " << err.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInputError;
  }
}
