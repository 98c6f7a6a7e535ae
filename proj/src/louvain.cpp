#include "mgcomm/louvain.hpp"

#include <omp.h>

#include <numeric>
#include <optional>

#include "kernels.hpp"

namespace mgcomm {

void LouvainConfig::validate() const {
  strategy.validate();
  if (!(iteration_tolerance > 0)) throw ConfigError("iteration tolerance must be positive");
  if (!(tolerance_decline_factor >= 1)) throw ConfigError("tolerance decline factor must be >= 1");
  if (max_iterations < 1) throw ConfigError("max iterations must be >= 1");
  if (max_passes < 1) throw ConfigError("max passes must be >= 1");
  if (!(aggregation_stop_ratio > 0 && aggregation_stop_ratio < 1))
    throw ConfigError("aggregation stop ratio must be in (0, 1)");
  if (threads < 0) throw ConfigError("thread count must be >= 0");
}

int LouvainConfig::workers() const {
  if (deterministic) return 1;
  return threads > 0 ? threads : omp_get_max_threads();
}

namespace {

template <class Access, class Acc>
LocalMovingResult run_local_moving(const Graph& g, CommunityAssignment& a, const LouvainConfig& config,
                                   const Acc& prototype, int workers) {
  const std::size_t n = g.num_vertices();
  const double two_m = g.total_weight_2m();
  const auto k = g.weighted_degrees();
  VertexId* membership = a.membership.data();
  Weight* totals = a.community_total.data();

  LocalMovingResult result;
  if (!(two_m > 0)) return result;
  for (int it = 0; it < config.max_iterations; ++it) {
    auto sweep = detail::for_each_vertex<Acc, detail::SweepTotals>(
        n, workers, prototype, [&](VertexId i, Acc& acc, std::vector<Candidate>& links) -> detail::SweepTotals {
          const VertexId d = Access::load(membership[i]);
          const Weight to_d = detail::collect_links<Access>(g, i, d, membership, {}, acc, links);
          const auto choice = detail::best_move<Access>(links, d, to_d, k[i], totals, two_m);
          if (choice.target == d) return {};
          Access::add(totals[d], -k[i]);
          Access::add(totals[choice.target], k[i]);
          Access::store(membership[i], choice.target);
          return {1, choice.gain};
        });
    ++result.iterations;
    result.vertices_moved += sweep.moved;
    result.total_gain += sweep.gain;
    if (sweep.moved == 0 || sweep.gain < config.iteration_tolerance) break;
  }
  return result;
}

template <class Acc>
std::vector<AggregateEdge> run_aggregation(const Graph& g, std::span<const VertexId> membership,
                                           std::size_t community_count, const Acc& prototype, int workers) {
  const auto groups = detail::group_members(membership, community_count);
  std::vector<std::vector<Candidate>> rows(community_count);

  auto collect = [&](std::size_t c, Acc& acc) {
    acc.clear();
    for (std::size_t p = groups.offsets[c]; p < groups.offsets[c + 1]; ++p) {
      const VertexId i = groups.members[p];
      const auto nbrs = g.neighbors(i);
      const auto ws = g.weights(i);
      for (std::size_t e = 0; e < nbrs.size(); ++e) acc.accumulate(membership[nbrs[e]], ws[e]);
    }
    auto& row = rows[c];
    acc.for_each([&](VertexId d, Weight w) { row.push_back({d, w}); });
  };

  if (workers <= 1) {
    Acc acc = prototype;
    for (std::size_t c = 0; c < community_count; ++c) collect(c, acc);
  } else {
#pragma omp parallel num_threads(workers)
    {
      Acc acc = prototype;
#pragma omp for schedule(dynamic, 256)
      for (std::size_t c = 0; c < community_count; ++c) collect(c, acc);
    }
  }

  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  std::vector<AggregateEdge> edges;
  edges.reserve(total);
  for (std::size_t c = 0; c < community_count; ++c)
    for (const auto& cand : rows[c]) edges.push_back({static_cast<VertexId>(c), cand.community, cand.weight});
  return edges;
}

}  // namespace

LocalMovingResult local_moving_pass(const Graph& g, CommunityAssignment& assignment, const LouvainConfig& config) {
  config.validate();
  if (assignment.membership.size() != g.num_vertices())
    throw std::invalid_argument("assignment does not cover the graph");
  const int workers = config.workers();
  auto prototype = make_accumulator(config.strategy, g.num_vertices());
  return std::visit(
      [&](const auto& proto) {
        if (workers <= 1) return run_local_moving<detail::PlainAccess>(g, assignment, config, proto, 1);
        return run_local_moving<detail::AtomicAccess>(g, assignment, config, proto, workers);
      },
      prototype);
}

std::vector<AggregateEdge> aggregation_pass(const Graph& g, std::span<const VertexId> membership,
                                            std::size_t community_count, const AccumulatorStrategy& strategy,
                                            int workers) {
  if (membership.size() != g.num_vertices()) throw std::invalid_argument("membership does not cover the graph");
  auto prototype = make_accumulator(strategy, community_count);
  return std::visit(
      [&](const auto& proto) { return run_aggregation(g, membership, community_count, proto, workers); }, prototype);
}

Graph aggregate(const Graph& g, std::span<const VertexId> membership, std::size_t community_count,
                const AccumulatorStrategy& strategy, int workers) {
  const auto edges = aggregation_pass(g, membership, community_count, strategy, workers);
  return build_aggregate_graph(community_count, edges, strategy.kind == StrategyKind::FarKV);
}

namespace {

CommunityAssignment singletons(const Graph& g) {
  CommunityAssignment a;
  a.membership.resize(g.num_vertices());
  std::iota(a.membership.begin(), a.membership.end(), VertexId{0});
  a.community_total = g.weighted_degrees();
  a.community_count = g.num_vertices();
  return a;
}

}  // namespace

DetectionResult detect_louvain(const Graph& g, const LouvainConfig& config) {
  config.validate();
  DetectionResult result;
  result.workers = config.workers();
  const AccumulatorStrategy aggregation_strategy = config.strategy.for_aggregation();
  result.aux_memory_bytes_per_worker = std::max(aux_memory_bytes(config.strategy, g.num_vertices()),
                                                aux_memory_bytes(aggregation_strategy, g.num_vertices()));

  // top[v]: vertex of the current level graph that original vertex v belongs to.
  std::vector<VertexId> top(g.num_vertices());
  std::iota(top.begin(), top.end(), VertexId{0});
  std::optional<Graph> level_graph;
  const Graph* cur = &g;
  LouvainConfig pass_config = config;

  for (int pass = 0; pass < config.max_passes; ++pass) {
    PassRecord rec;
    rec.vertex_count = cur->num_vertices();
    rec.graph_weight_2m = cur->total_weight_2m();

    CommunityAssignment a = singletons(*cur);
    auto t0 = std::chrono::steady_clock::now();
    const auto lm = local_moving_pass(*cur, a, pass_config);
    rec.local_moving_ms = detail::elapsed_ms(t0);
    rec.iterations = lm.iterations;
    rec.vertices_moved = lm.vertices_moved;
    rec.total_gain = lm.total_gain;

    const std::size_t count = renumber_dense(a.membership);
    rec.community_count = count;
    for (auto& t : top) t = a.membership[t];

    const bool last = lm.vertices_moved == 0 || pass + 1 == config.max_passes ||
                      static_cast<double>(count) > config.aggregation_stop_ratio * static_cast<double>(cur->num_vertices());
    if (last) {
      result.trace.push_back(rec);
      break;
    }
    t0 = std::chrono::steady_clock::now();
    Graph next = aggregate(*cur, a.membership, count, aggregation_strategy, result.workers);
    rec.aggregation_ms = detail::elapsed_ms(t0);
    result.trace.push_back(rec);
    level_graph = std::move(next);
    cur = &*level_graph;
    pass_config.iteration_tolerance /= config.tolerance_decline_factor;
  }

  result.assignment = recompute_community_totals(g, std::move(top));
  return result;
}

}  // namespace mgcomm
