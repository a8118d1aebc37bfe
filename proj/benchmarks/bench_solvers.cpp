#include <benchmark/benchmark.h>

#include <graphpde/nonlinearity.hpp>
#include <graphpde/solvers.hpp>

#include "grid.hpp"

using namespace graphpde;

static void BM_dirichlet_cubic(benchmark::State& state) {
  const Domain d = bench::grid_domain(static_cast<int>(state.range(0)));
  const auto omega = d.omega_ids();
  const auto g = Nonlinearity::power(d.graph(), VertexFunction::constant(omega, 0.0),
                                     VertexFunction::constant(omega, 1.0), 3.0, 1.0);
  const auto spec = make_semilinear_dirichlet(d, static_cast<double>(state.range(1)), g,
                                              VertexFunction::constant(d.interior_ids(), 1.0),
                                              VertexFunction::constant(d.boundary_ids(), 0.5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(spec));
  }
}
BENCHMARK(BM_dirichlet_cubic)
    ->ArgsProduct({{4, 6, 8}, {2, 3}})
    ->Unit(benchmark::kMillisecond);

static void BM_yamabe_mp(benchmark::State& state) {
  const Domain d = bench::grid_domain(static_cast<int>(state.range(0)));
  const auto omega = d.omega_ids();
  const auto one = VertexFunction::constant(omega, 1.0);
  const auto spec = make_yamabe_mp(d, 1, 2.0, 3.0, 0.05, one, one);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(spec));
  }
}
BENCHMARK(BM_yamabe_mp)->DenseRange(3, 5, 1)->Unit(benchmark::kMillisecond);
