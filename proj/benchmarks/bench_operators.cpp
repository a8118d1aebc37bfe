#include <benchmark/benchmark.h>

#include <graphpde/calculus.hpp>

#include "grid.hpp"

using namespace graphpde;

static void BM_laplacian_field(benchmark::State& state) {
  const Domain d = bench::grid_domain(static_cast<int>(state.range(0)));
  const calculus::OperatorContext ctx(d);
  const auto u = bench::random_field(d.graph().vertex_count(), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(calculus::laplacian_field<double>(ctx, u));
  }
  state.SetComplexityN(static_cast<int64_t>(d.graph().vertex_count()));
}
BENCHMARK(BM_laplacian_field)->RangeMultiplier(2)->Range(8, 128)->Complexity();

static void BM_m_slope_field(benchmark::State& state) {
  const Domain d = bench::grid_domain(32);
  const calculus::OperatorContext ctx(d);
  const auto u = bench::random_field(d.graph().vertex_count(), 2);
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(calculus::m_slope_field(ctx, u, m));
  }
}
BENCHMARK(BM_m_slope_field)->DenseRange(1, 4);

static void BM_p_laplacian(benchmark::State& state) {
  const Domain d = bench::grid_domain(static_cast<int>(state.range(0)));
  const calculus::OperatorContext ctx(d, calculus::ExtensionMode::RestrictToOmega);
  const auto u = bench::random_field(d.graph().vertex_count(), 3);
  for (auto _ : state) {
    double s = 0.0;
    for (Index x : d.interior()) s += calculus::p_laplacian_at(ctx, u, 3.0, x);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_p_laplacian)->RangeMultiplier(2)->Range(8, 64);

static void BM_mp_bilinear_gradient(benchmark::State& state) {
  const Domain d = bench::grid_domain(16);
  const calculus::OperatorContext ctx(d);
  const auto u = bench::random_field(d.graph().vertex_count(), 4);
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(calculus::mp_bilinear_gradient(ctx, u, m, 3.0));
  }
}
BENCHMARK(BM_mp_bilinear_gradient)->DenseRange(1, 3);
