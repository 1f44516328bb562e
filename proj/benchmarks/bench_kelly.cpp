#include <benchmark/benchmark.h>

#include "maxent/maxent.hpp"

static void BM_KellySimulate(benchmark::State& state) {
  auto space = maxent::make_numbered_space(2);
  const maxent::Distribution p(space, {0.7, 0.3});
  maxent::KellyConfig config{maxent::Measure::uniform(space), p,
                             {{"pstar", p}, {"uniform", maxent::Distribution::uniform(space)},
                              {"skew", maxent::Distribution(space, {0.9, 0.1})}},
                             static_cast<std::size_t>(state.range(0)), 100, 1};
  for (auto _ : state) benchmark::DoNotOptimize(maxent::simulate(config));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 100);
}
BENCHMARK(BM_KellySimulate)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
