#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "mgcomm/louvain.hpp"
#include "mgcomm/synthetic.hpp"
#include "test_support.hpp"

using namespace mgcomm;
using namespace mgcomm::testing;

namespace {

LouvainConfig serial(AccumulatorStrategy s) {
  LouvainConfig c;
  c.strategy = s;
  c.deterministic = true;
  return c;
}

// Strategies able to tell two neighbor communities apart on tiny graphs. The
// default small hashtable has a single slot below a few thousand vertices.
std::vector<AccumulatorStrategy> separating_strategies() {
  return {AccumulatorStrategy::far_kv(),
          AccumulatorStrategy::small_hash(1.0),
          AccumulatorStrategy::misra_gries(2),
          AccumulatorStrategy::misra_gries(8),
          AccumulatorStrategy::misra_gries(8, SubtractionPolicy::Unconditional),
          AccumulatorStrategy::misra_gries(64)};
}

std::vector<AccumulatorStrategy> all_strategies() {
  return {AccumulatorStrategy::far_kv(),
          AccumulatorStrategy::small_hash(),
          AccumulatorStrategy::boyer_moore(),
          AccumulatorStrategy::misra_gries(2),
          AccumulatorStrategy::misra_gries(8),
          AccumulatorStrategy::misra_gries(8, SubtractionPolicy::Unconditional),
          AccumulatorStrategy::misra_gries(64)};
}

CommunityAssignment singletons(const Graph& g) {
  CommunityAssignment a;
  a.membership.resize(g.num_vertices());
  std::iota(a.membership.begin(), a.membership.end(), VertexId{0});
  a.community_total = g.weighted_degrees();
  a.community_count = g.num_vertices();
  return a;
}

std::map<std::tuple<VertexId, VertexId>, Weight> edge_map(const std::vector<AggregateEdge>& edges) {
  std::map<std::tuple<VertexId, VertexId>, Weight> m;
  for (const auto& e : edges) m[{e.from, e.to}] += e.weight;
  return m;
}

// Exact aggregation oracle: sums w_ij over stored entries by (C_i, C_j).
std::map<std::tuple<VertexId, VertexId>, Weight> oracle_aggregate(const Graph& g, const std::vector<VertexId>& m) {
  std::map<std::tuple<VertexId, VertexId>, Weight> out;
  for (VertexId i = 0; i < g.num_vertices(); ++i)
    for (std::size_t e = 0; e < g.degree(i); ++e) out[{m[i], m[g.neighbors(i)[e]]}] += g.weights(i)[e];
  return out;
}

}  // namespace

TEST(Louvain, TwoTrianglesReachExhaustiveOptimum) {
  const Graph g = two_triangles();
  const auto best = exhaustive_best(g);
  ASSERT_EQ(best.partitions, 203u);
  ASSERT_NEAR(best.modularity, 0.5, 1e-12);
  for (const auto& s : separating_strategies()) {
    const auto r = detect_louvain(g, serial(s));
    EXPECT_NEAR(modularity(g, r.assignment), best.modularity, 1e-12) << s.label();
    EXPECT_EQ(canonical(r.assignment.membership), canonical(best.membership)) << s.label();
  }
}

TEST(Louvain, StarCollapsesToOneCommunity) {
  const Graph g = star4();
  const auto best = exhaustive_best(g);
  ASSERT_EQ(best.partitions, 15u);
  for (const auto& s : separating_strategies()) {
    const auto r = detect_louvain(g, serial(s));
    EXPECT_EQ(r.assignment.community_count, 1u) << s.label();
    EXPECT_NEAR(modularity(g, r.assignment), best.modularity, 1e-12);
  }
}

TEST(Louvain, OneSlotCannotSplitTies) {
  // A triangle vertex sees two neighbor communities of equal weight; a single
  // slot cancels them out and nothing moves.
  const auto r = detect_louvain(two_triangles(), serial(AccumulatorStrategy::boyer_moore()));
  EXPECT_EQ(r.assignment.community_count, 6u);
}

TEST(LocalMoving, VertexWithoutPositiveGainStays) {
  // Every vertex already in the optimum; no move improves Q.
  const Graph g = two_triangles();
  CommunityAssignment a = recompute_community_totals(g, {0, 0, 0, 1, 1, 1});
  const auto r = local_moving_pass(g, a, serial(AccumulatorStrategy::misra_gries(8)));
  EXPECT_EQ(r.vertices_moved, 0u);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_EQ(a.membership, (std::vector<VertexId>{0, 0, 0, 1, 1, 1}));
}

TEST(LocalMoving, QualityNeverDropsAcrossSweeps) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = random_graph(10 + rng() % 50, 0.12, rng, trial % 2 == 0, trial % 3 == 0);
    if (g.total_weight_2m() == 0) continue;
    for (const auto& s : {AccumulatorStrategy::far_kv(), AccumulatorStrategy::misra_gries(2),
                          AccumulatorStrategy::boyer_moore(),
                          AccumulatorStrategy::misra_gries(4, SubtractionPolicy::Unconditional)}) {
      LouvainConfig c = serial(s);
      c.max_iterations = 1;
      CommunityAssignment a = singletons(g);
      double q = modularity(g, a.membership);
      for (int sweep = 0; sweep < 10; ++sweep) {
        const auto r = local_moving_pass(g, a, c);
        const double next = modularity(g, a.membership);
        ASSERT_GE(next, q - 1e-9) << s.label();
        // The reported gain is the sum of exact per-move deltas.
        ASSERT_NEAR(next - q, r.total_gain, 1e-9) << s.label();
        q = next;
        double sum = std::accumulate(a.community_total.begin(), a.community_total.end(), 0.0);
        ASSERT_NEAR(sum, g.total_weight_2m(), 1e-9 * g.total_weight_2m());
        if (r.vertices_moved == 0) break;
      }
    }
  }
}

TEST(Aggregation, TwoTrianglesExact) {
  const Graph g = two_triangles();
  const std::vector<VertexId> m = {0, 0, 0, 1, 1, 1};
  const auto edges = aggregation_pass(g, m, 2, AccumulatorStrategy::far_kv());
  EXPECT_EQ(edge_map(edges), (std::map<std::tuple<VertexId, VertexId>, Weight>{{{0, 0}, 6}, {{1, 1}, 6}}));
  const Graph s = aggregate(g, m, 2, AccumulatorStrategy::far_kv());
  EXPECT_EQ(s.num_vertices(), 2u);
  EXPECT_EQ(s.total_weight_2m(), 12);
  EXPECT_EQ(s.edge_weight(0, 0), 6);
  EXPECT_FALSE(s.edge_weight(0, 1).has_value());
}

TEST(Aggregation, PathExact) {
  const Graph g = path3();
  const std::vector<VertexId> m = {0, 0, 1};
  const auto edges = aggregation_pass(g, m, 2, AccumulatorStrategy::far_kv());
  EXPECT_EQ(edge_map(edges),
            (std::map<std::tuple<VertexId, VertexId>, Weight>{{{0, 0}, 2}, {{0, 1}, 1}, {{1, 0}, 1}}));
}

TEST(Aggregation, SingletonsReproduceInput) {
  std::mt19937_64 rng(8);
  const Graph g = random_graph(25, 0.2, rng, true, true);
  std::vector<VertexId> m(25);
  std::iota(m.begin(), m.end(), VertexId{0});
  const Graph s = aggregate(g, m, 25, AccumulatorStrategy::far_kv());
  ASSERT_EQ(s.num_vertices(), g.num_vertices());
  for (VertexId u = 0; u < 25; ++u)
    for (VertexId v = 0; v < 25; ++v) ASSERT_EQ(s.edge_weight(u, v), g.edge_weight(u, v));
}

TEST(Aggregation, ExactMatchesOracleAndConservesWeight) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + rng() % 60;
    const Graph g = random_graph(n, 0.15, rng, true, true);
    std::vector<VertexId> m(n);
    for (auto& c : m) c = rng() % 6;
    const std::size_t count = renumber_dense(m);
    const auto edges = aggregation_pass(g, m, count, AccumulatorStrategy::far_kv(), trial % 2 ? 3 : 1);
    ASSERT_EQ(edge_map(edges), oracle_aggregate(g, m));
    const Graph s = aggregate(g, m, count, AccumulatorStrategy::far_kv());
    ASSERT_EQ(s.total_weight_2m(), g.total_weight_2m());
    std::vector<VertexId> ids(count);
    std::iota(ids.begin(), ids.end(), VertexId{0});
    if (g.total_weight_2m() > 0) ASSERT_NEAR(modularity(s, ids), modularity(g, m), 1e-12);
  }
}

TEST(Aggregation, SketchWithRoomMatchesExact) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = random_graph(40, 0.2, rng, false, true);
    std::vector<VertexId> m(40);
    for (auto& c : m) c = rng() % 5;
    const std::size_t count = renumber_dense(m);
    ASSERT_EQ(edge_map(aggregation_pass(g, m, count, AccumulatorStrategy::misra_gries(8))),
              edge_map(aggregation_pass(g, m, count, AccumulatorStrategy::far_kv())));
  }
}

TEST(Aggregation, SketchOutputIsSymmetrized) {
  std::mt19937_64 rng(33);
  const Graph g = random_graph(200, 0.1, rng, false);
  std::vector<VertexId> m(200);
  for (auto& c : m) c = rng() % 40;
  const std::size_t count = renumber_dense(m);
  const Graph s = aggregate(g, m, count, AccumulatorStrategy::misra_gries(2));
  EXPECT_TRUE(s.check_symmetry());
}

TEST(Louvain, SketchWithRoomMatchesFarKV) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = random_graph(20 + rng() % 40, 0.1, rng, trial % 2 == 0);
    if (g.total_weight_2m() == 0) continue;
    const auto exact = detect_louvain(g, serial(AccumulatorStrategy::far_kv()));
    const auto mg = detect_louvain(g, serial(AccumulatorStrategy::misra_gries(64)));
    ASSERT_EQ(mg.assignment.membership, exact.assignment.membership);
  }
}

TEST(Louvain, DeterministicRunsRepeat) {
  PlantedPartitionParams p;
  p.vertices = 3000;
  const Graph g = generate_planted_partition(p).graph;
  for (const auto& s : all_strategies()) {
    const auto a = detect_louvain(g, serial(s));
    const auto b = detect_louvain(g, serial(s));
    EXPECT_EQ(a.assignment.membership, b.assignment.membership) << s.label();
  }
}

TEST(Louvain, TraceIsConsistent) {
  PlantedPartitionParams p;
  p.vertices = 3000;
  const Graph g = generate_planted_partition(p).graph;
  const auto r = detect_louvain(g, serial(AccumulatorStrategy::far_kv()));
  ASSERT_FALSE(r.trace.empty());
  EXPECT_EQ(r.trace.front().vertex_count, g.num_vertices());
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    // Exact aggregation: every level carries the same total weight.
    EXPECT_EQ(r.trace[i].graph_weight_2m, g.total_weight_2m());
    if (i > 0) {
      EXPECT_EQ(r.trace[i].vertex_count, r.trace[i - 1].community_count);
      EXPECT_LE(r.trace[i].community_count, r.trace[i - 1].community_count);
    }
  }
  EXPECT_EQ(r.trace.back().community_count, r.assignment.community_count);
}

TEST(Louvain, ParallelPathProducesValidPartition) {
  PlantedPartitionParams p;
  p.vertices = 5000;
  const Graph g = generate_planted_partition(p).graph;
  for (const auto& s : {AccumulatorStrategy::far_kv(), AccumulatorStrategy::misra_gries(8)}) {
    LouvainConfig c;
    c.strategy = s;
    c.threads = 3;
    const auto par = detect_louvain(g, c);
    const auto ser = detect_louvain(g, serial(s));
    EXPECT_EQ(par.workers, 3);
    EXPECT_EQ(par.assignment.membership.size(), g.num_vertices());
    EXPECT_GE(modularity(g, par.assignment), 0.95 * modularity(g, ser.assignment)) << s.label();
    EXPECT_EQ(par.aux_memory_bytes(), 3 * par.aux_memory_bytes_per_worker);
  }
}

TEST(Louvain, EdgelessGraphKeepsSingletons) {
  const Graph g = make_graph(4, {});
  const auto r = detect_louvain(g, serial(AccumulatorStrategy::misra_gries(8)));
  EXPECT_EQ(r.assignment.community_count, 4u);
  EXPECT_THROW(modularity(g, r.assignment), QualityUndefinedError);
}

TEST(Louvain, ConfigValidation) {
  LouvainConfig c;
  c.iteration_tolerance = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.aggregation_stop_ratio = 1;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.tolerance_decline_factor = 0.5;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.max_passes = 0;
  EXPECT_THROW(c.validate(), ConfigError);
}
