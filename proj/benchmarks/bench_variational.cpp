#include <benchmark/benchmark.h>

#include <graphpde/calculus.hpp>
#include <graphpde/variational.hpp>

#include "grid.hpp"

using namespace graphpde;

static void BM_sobolev_inf(benchmark::State& state) {
  const Domain d = bench::grid_domain(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sobolev_constant(d, 1, 2.0, calculus::kInfinity));
  }
}
BENCHMARK(BM_sobolev_inf)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_sobolev_finite(benchmark::State& state) {
  const Domain d = bench::grid_domain(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sobolev_constant(d, 1, 2.0, 4.0));
  }
}
BENCHMARK(BM_sobolev_finite)->DenseRange(4, 6, 1)->Unit(benchmark::kMillisecond);

static void BM_threshold(benchmark::State& state) {
  double p = 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(threshold_Lambda(p, 3.0, 0.7, 1.3, 0.4));
    benchmark::DoNotOptimize(lambda_rho(0.9, p, 3.0, 0.7, 1.3, 0.4));
  }
}
BENCHMARK(BM_threshold);
