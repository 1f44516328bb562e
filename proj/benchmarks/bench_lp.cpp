#include <benchmark/benchmark.h>

#include "bench_util.hpp"

static void BM_ConstraintSetConstruction(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bench::random_constraints(n, 10, 3));
}
BENCHMARK(BM_ConstraintSetConstruction)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_Support(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    state.PauseTiming();
    auto c = bench::random_constraints(n, 10, 3);
    state.ResumeTiming();
    benchmark::DoNotOptimize(maxent::support(c));
  }
}
BENCHMARK(BM_Support)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_Extremize(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c = bench::random_constraints(n, 10, 3);
  std::vector<double> coeffs(n);
  maxent::Rng rng(9);
  for (double& v : coeffs) v = rng.normal();
  for (auto _ : state) benchmark::DoNotOptimize(maxent::lp_extremize(c, coeffs, maxent::Sense::Maximize));
}
BENCHMARK(BM_Extremize)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
