#include <random>

#include <benchmark/benchmark.h>

#include "treediam/graph.hpp"
#include "treediam/metric.hpp"

using namespace treediam;

namespace {

// Random inner addresses of D_{m,k}, with an occasional endpoint.
std::vector<DiamondAddress> sample(const DiamondParams& params, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<DiamondAddress> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (rng() % 16 == 0) {
      out.push_back(rng() % 2 ? DiamondAddress::bottom() : DiamondAddress::top());
      continue;
    }
    RefinementPath path(rng() % params.level);
    for (auto& r : path) r = {1 + rng() % params.branching.value(), rng() % 2 ? Half::Lower : Half::Upper};
    out.push_back(DiamondAddress::inner(std::move(path), 1 + rng() % params.branching.value()));
  }
  return out;
}

void BM_OracleDistance(benchmark::State& state) {
  const DiamondParams params{static_cast<unsigned>(state.range(0)), Branching(2)};
  const auto pts = sample(params, 1024, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(diamond_distance(pts[i % 1024], pts[(i * 7 + 3) % 1024], params));
    ++i;
  }
}
BENCHMARK(BM_OracleDistance)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(60);

void BM_BfsDistance(benchmark::State& state) {
  const DiamondParams params{static_cast<unsigned>(state.range(0)), Branching(2)};
  const auto g = materialize_diamond(params);
  const auto pts = sample(params, 1024, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bfs_distance(g, pts[i % 1024], pts[(i * 7 + 3) % 1024]));
    ++i;
  }
}
BENCHMARK(BM_BfsDistance)->Arg(4)->Arg(6)->Arg(8);

void BM_Materialize(benchmark::State& state) {
  const DiamondParams params{static_cast<unsigned>(state.range(0)), Branching(static_cast<std::uint64_t>(state.range(1)))};
  for (auto _ : state) benchmark::DoNotOptimize(materialize_diamond(params).vertex_count());
}
BENCHMARK(BM_Materialize)->Args({4, 2})->Args({6, 2})->Args({8, 2})->Args({4, 3})->Unit(benchmark::kMillisecond);

void BM_AllPairsOracle(benchmark::State& state) {
  const auto g = materialize_diamond({static_cast<unsigned>(state.range(0)), Branching(2)});
  for (auto _ : state) benchmark::DoNotOptimize(all_pairs_oracle(g).size());
}
BENCHMARK(BM_AllPairsOracle)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
