// Serial reference path vs OpenMP path for each algorithm and strategy.
#include <benchmark/benchmark.h>

#include <omp.h>

#include "mgcomm/leiden.hpp"
#include "mgcomm/louvain.hpp"
#include "mgcomm/lpa.hpp"
#include "mgcomm/synthetic.hpp"

using namespace mgcomm;

namespace {

const Graph& bench_graph() {
  static const Graph g = [] {
    PlantedPartitionParams p;
    p.vertices = 50000;
    return generate_planted_partition(p).graph;
  }();
  return g;
}

AccumulatorStrategy strategy_for(int64_t code) {
  switch (code) {
    case 0: return AccumulatorStrategy::far_kv();
    case 1: return AccumulatorStrategy::small_hash();
    case 2: return AccumulatorStrategy::boyer_moore();
    case 3: return AccumulatorStrategy::misra_gries(8);
    default: return AccumulatorStrategy::misra_gries(64);
  }
}

void set_labels(benchmark::State& state, const AccumulatorStrategy& s, bool parallel) {
  state.SetLabel(s.label() + (parallel ? "/omp" : "/serial"));
}

void BM_LocalMoving(benchmark::State& state) {
  const Graph& g = bench_graph();
  LouvainConfig c;
  c.strategy = strategy_for(state.range(0));
  c.deterministic = state.range(1) == 0;
  set_labels(state, c.strategy, !c.deterministic);
  const auto k = g.weighted_degrees();
  for (auto _ : state) {
    state.PauseTiming();
    CommunityAssignment a;
    a.membership.resize(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) a.membership[v] = v;
    a.community_total = k;
    state.ResumeTiming();
    benchmark::DoNotOptimize(local_moving_pass(g, a, c));
  }
}

void BM_Louvain(benchmark::State& state) {
  LouvainConfig c;
  c.strategy = strategy_for(state.range(0));
  c.deterministic = state.range(1) == 0;
  set_labels(state, c.strategy, !c.deterministic);
  for (auto _ : state) benchmark::DoNotOptimize(detect_louvain(bench_graph(), c));
}

void BM_Leiden(benchmark::State& state) {
  LouvainConfig c;
  c.strategy = strategy_for(state.range(0));
  c.deterministic = state.range(1) == 0;
  set_labels(state, c.strategy, !c.deterministic);
  for (auto _ : state) benchmark::DoNotOptimize(detect_leiden(bench_graph(), c));
}

void BM_Lpa(benchmark::State& state) {
  LpaConfig c;
  c.strategy = strategy_for(state.range(0));
  c.deterministic = state.range(1) == 0;
  set_labels(state, c.strategy, !c.deterministic);
  for (auto _ : state) benchmark::DoNotOptimize(detect_lpa(bench_graph(), c));
}

}  // namespace

BENCHMARK(BM_LocalMoving)->ArgsProduct({{0, 1, 2, 3, 4}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Louvain)->ArgsProduct({{0, 1, 2, 3}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Leiden)->ArgsProduct({{0, 2, 4}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Lpa)->ArgsProduct({{0, 2, 3}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
