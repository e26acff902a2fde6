#include <benchmark/benchmark.h>

#include <random>

#include "polyfe/element2d.hpp"
#include "polyfe/element3d.hpp"
#include "polyfe/meshgen.hpp"
#include "polyfe/mixedfem.hpp"
#include "polyfe/shapes.hpp"

using namespace polyfe;

namespace {

Polygon2D regular_polygon(int n) {
  std::vector<Vec2> pts;
  for (int k = 0; k < n; ++k)
    pts.emplace_back(std::cos(2 * M_PI * k / n), std::sin(2 * M_PI * k / n));
  return Polygon2D(pts);
}

void BM_Wachspress2D(benchmark::State& state) {
  const Polygon2D poly = regular_polygon(static_cast<int>(state.range(0)));
  const Vec2 x(0.21, 0.13);
  for (auto _ : state) benchmark::DoNotOptimize(wachspress(poly, x));
}
BENCHMARK(BM_Wachspress2D)->Arg(4)->Arg(8)->Arg(16);

void BM_Wachspress3D(benchmark::State& state) {
  const Polyhedron poly = make_regular_octahedron();
  const Vec3 x(0.11, 0.07, -0.2);
  for (auto _ : state) benchmark::DoNotOptimize(wachspress(poly, x));
}
BENCHMARK(BM_Wachspress3D);

void BM_Basis2DBuild(benchmark::State& state) {
  const Polygon2D poly = regular_polygon(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(HdivBasis2D::build(poly));
}
BENCHMARK(BM_Basis2DBuild)->Arg(4)->Arg(8)->Arg(16);

void BM_Basis2DEval(benchmark::State& state) {
  const Polygon2D poly = regular_polygon(8);
  const HdivBasis2D basis = HdivBasis2D::build(poly);
  const Vec2 x(0.21, 0.13);
  for (auto _ : state) benchmark::DoNotOptimize(basis.eval_all(x));
}
BENCHMARK(BM_Basis2DEval);

void BM_Element3DBuild(benchmark::State& state) {
  const std::string name = builtin_shape_names()[state.range(0)];
  state.SetLabel(name);
  for (auto _ : state) {
    Element3D elem(make_shape(name));
    benchmark::DoNotOptimize(elem);
  }
}
BENCHMARK(BM_Element3DBuild)->DenseRange(0, 5);

void BM_PolygonRule(benchmark::State& state) {
  const Polygon2D poly = regular_polygon(6);
  for (auto _ : state) benchmark::DoNotOptimize(PolygonRule(poly, 10));
}
BENCHMARK(BM_PolygonRule);

void BM_MixedSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Mesh2D mesh = generate_quad_mesh(n, 0.3);
  const PoissonProblem problem = smooth_problem();
  for (auto _ : state) {
    const SaddleSystem sys = assemble(mesh, problem);
    benchmark::DoNotOptimize(solve(sys));
  }
}
BENCHMARK(BM_MixedSolve)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
