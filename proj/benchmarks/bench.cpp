#include <benchmark/benchmark.h>

#include "multicomm/classical.hpp"
#include "multicomm/corpus.hpp"
#include "multicomm/hierarchy.hpp"
#include "multicomm/linalg.hpp"
#include "multicomm/polytope.hpp"
#include "multicomm/sdp.hpp"
#include "multicomm/seesaw.hpp"

using namespace multicomm;

namespace {

Functional named(const char* name) { return find_inequality(name)->functional; }

void BM_kron(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_pure_state(n, 1);
  const auto b = random_pure_state(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kron(a, b));
}
BENCHMARK(BM_kron)->Arg(4)->Arg(8);

void BM_hermitian_eig(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  HaarSampler rng(3);
  ComplexMatrix h(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    auto p = rng.pure_state(n);
    p *= cplx(rng.uniform(), 0);
    h += p;
  }
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(h));
}
BENCHMARK(BM_hermitian_eig)->Arg(4)->Arg(9)->Arg(16);

void BM_vertex_enumeration(benchmark::State& state) {
  Scenario s;
  s.nx = 4;
  s.ny = 3;
  s.nz = 2;
  for (auto _ : state) benchmark::DoNotOptimize(enum_vertices_dim(s));
}
BENCHMARK(BM_vertex_enumeration)->Unit(benchmark::kMillisecond);

void BM_double_description(benchmark::State& state) {
  // Cross-polytope: 2^d facets, 2d vertices; a mid-size DD workload.
  const int d = static_cast<int>(state.range(0));
  HPolytope h;
  for (int mask = 0; mask < (1 << d); ++mask) {
    RatVec row(static_cast<std::size_t>(d) + 1, Rat(1));
    for (int i = 0; i < d; ++i) row[1 + i] = (mask >> i & 1) ? 1 : -1;
    h.ineqs.push_back(std::move(row));
  }
  for (auto _ : state) benchmark::DoNotOptimize(facets_to_vertices(h));
}
BENCHMARK(BM_double_description)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_classical_bound(benchmark::State& state) {
  const auto f = named("I4");
  for (auto _ : state) benchmark::DoNotOptimize(classical_bound(f));
}
BENCHMARK(BM_classical_bound)->Unit(benchmark::kMillisecond);

void BM_encoder_vertices_dist(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(enum_encoder_vertices_dist(3, Rat(2, 3)));
}
BENCHMARK(BM_encoder_vertices_dist)->Unit(benchmark::kMillisecond);

void BM_solve_sdp_hierarchy(benchmark::State& state) {
  auto f = named("I1");
  f.scenario.d = 2;
  for (auto _ : state)
    benchmark::DoNotOptimize(hierarchy_upper_bound(f, HierarchyVariant::Paper));
}
BENCHMARK(BM_solve_sdp_hierarchy)->Unit(benchmark::kMillisecond);

void BM_seesaw_restart(benchmark::State& state) {
  const auto f = named("I1");
  SeesawConfig cfg;
  cfg.d = 2;
  cfg.restarts = 1;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    cfg.seed = seed++;
    benchmark::DoNotOptimize(run_seesaw(f, cfg));
  }
}
BENCHMARK(BM_seesaw_restart)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
