#include "oracles.hpp"
#include "symcone/decomp.hpp"
#include "symcone/orbit_db.hpp"
#include "symcone/pivot.hpp"
#include "symcone/symmetry.hpp"

#include <benchmark/benchmark.h>

using namespace symcone;

namespace {

Cone polytope(const RationalMatrix& pts) { return homogenize(pts, oracle::empty_matrix(pts.cols())); }

PermGroup restricted(const Cone& c) { return restricted_automorphism_group(c.rays()).group; }

}  // namespace

static void BM_DoubleDescription(benchmark::State& state) {
  const Cone c = polytope(oracle::cross_vertices(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(dual_description_dd(c));
}
BENCHMARK(BM_DoubleDescription)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_RestrictedAutomorphisms(benchmark::State& state) {
  const Cone c = polytope(oracle::cube_vertices(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(restricted(c).order());
}
BENCHMARK(BM_RestrictedAutomorphisms)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_CanonicalRepresentative(benchmark::State& state) {
  const Cone c = polytope(oracle::cube_vertices(5));
  const PermGroup g = restricted(c);
  const FaceSet s{0, 3, 5, 6, 9, 10, 12, 15, 17, 18, 20, 23};
  for (auto _ : state) benchmark::DoNotOptimize(canonical_representative(g, s));
}
BENCHMARK(BM_CanonicalRepresentative)->Unit(benchmark::kMicrosecond);

static void BM_AdjacencyWreath(benchmark::State& state) {
  const Cone c = polytope(oracle::wreath_cross_vertices(2, static_cast<int>(state.range(0))));
  const PermGroup g = restricted(c);
  for (auto _ : state) {
    ConversionTask t{c, g, Method::adjacency, {}};
    benchmark::DoNotOptimize(adjacency_decomposition(t, 0));
  }
}
BENCHMARK(BM_AdjacencyWreath)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_IncidenceCell24(benchmark::State& state) {
  const Cone c = polytope(oracle::cell24_vertices());
  const PermGroup g = restricted(c);
  for (auto _ : state) {
    ConversionTask t{c, g, Method::incidence, {}};
    t.options.policy.base_rays = 6;
    benchmark::DoNotOptimize(incidence_decomposition(t, 0));
  }
}
BENCHMARK(BM_IncidenceCell24)->Unit(benchmark::kMillisecond);

static void BM_PivotCube(benchmark::State& state) {
  const Cone c = centered_cube(static_cast<int>(state.range(0)));
  const PermGroup g = restricted(c);
  for (auto _ : state) {
    ConversionTask t{c, g, Method::pivot, {}};
    t.options.pivot_pruning = state.range(1) != 0;
    benchmark::DoNotOptimize(explore_basis_graph(t, std::nullopt));
  }
}
BENCHMARK(BM_PivotCube)->Args({4, 1})->Args({5, 1})->Args({5, 0})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
