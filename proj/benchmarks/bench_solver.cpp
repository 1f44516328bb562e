#include <benchmark/benchmark.h>

#include "bench_util.hpp"

static void BM_SolveMaxEnt(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    state.PauseTiming();
    auto c = bench::random_constraints(n, k, 11);
    maxent::MaxEntProblem problem(maxent::Measure::uniform(c.space()), c);
    state.ResumeTiming();
    benchmark::DoNotOptimize(maxent::solve_maxent(problem));
  }
}
BENCHMARK(BM_SolveMaxEnt)->Args({10, 3})->Args({100, 5})->Args({1000, 10})->Unit(benchmark::kMillisecond);

static void BM_VerifySaddle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c = bench::random_constraints(n, 3, 5);
  const maxent::MaxEntProblem problem(maxent::Measure::uniform(c.space()), c);
  for (auto _ : state) benchmark::DoNotOptimize(maxent::verify_saddle(problem));
}
BENCHMARK(BM_VerifySaddle)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_MinimaxUnion(benchmark::State& state) {
  auto space = maxent::make_space({"0", "1"});
  auto one = maxent::RandomVariable::indicator(space, {1});
  const auto d = maxent::DisjunctiveConstraint::from_specs(
      {maxent::ConstraintSpec(one, {0.1}), maxent::ConstraintSpec(one, {0.95})});
  const auto m = maxent::Measure::uniform(space);
  for (auto _ : state) benchmark::DoNotOptimize(maxent::solve_minimax_union(d, m));
}
BENCHMARK(BM_MinimaxUnion)->Unit(benchmark::kMillisecond);
