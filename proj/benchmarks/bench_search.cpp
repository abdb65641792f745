#include <benchmark/benchmark.h>

#include "treediam/embedding.hpp"

using namespace treediam;

namespace {

void BM_StarEvaluate(benchmark::State& state) {
  const auto star = star_embedding(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_distortion(star.map).distortion);
}
BENCHMARK(BM_StarEvaluate)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_ExhaustiveT2(benchmark::State& state) {
  SearchConfig cfg;
  cfg.workers = static_cast<unsigned>(state.range(1));
  const DiamondParams target{static_cast<unsigned>(state.range(0)), Branching(2)};
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_search(TreeSpec{2}, target, cfg).nodes);
}
BENCHMARK(BM_ExhaustiveT2)->Args({2, 1})->Args({3, 1})->Args({3, 4})->Unit(benchmark::kMillisecond);

void BM_LocalSearchT3(benchmark::State& state) {
  SearchConfig cfg;
  cfg.mode = SearchMode::Local;
  const DiamondParams target{static_cast<unsigned>(state.range(0)), Branching(2)};
  for (auto _ : state) benchmark::DoNotOptimize(local_search(TreeSpec{3}, target, cfg).report.distortion);
}
BENCHMARK(BM_LocalSearchT3)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
