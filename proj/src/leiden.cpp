#include "mgcomm/leiden.hpp"

#include <numeric>
#include <optional>

#include "kernels.hpp"

namespace mgcomm {

namespace {

// Per-sub-community flag values. A vertex claims its own singleton with
// kLeft before moving so nobody joins a sub-community that is being vacated.
constexpr std::uint8_t kUntouched = 0;
constexpr std::uint8_t kTouched = 1;
constexpr std::uint8_t kLeft = 2;

struct RefineTotals {
  std::size_t moved = 0;
  std::size_t processed = 0;
  RefineTotals& operator+=(const RefineTotals& o) {
    moved += o.moved;
    processed += o.processed;
    return *this;
  }
};

template <class Access, class Acc>
void run_refinement(const Graph& g, RefinementState& s, const Acc& prototype, int workers) {
  const std::size_t n = g.num_vertices();
  const double two_m = g.total_weight_2m();
  if (!(two_m > 0)) {
    s.vertices_processed = n;
    return;
  }
  const auto k = g.weighted_degrees();
  VertexId* sub = s.sub_membership.data();
  Weight* totals = s.sub_totals.data();
  std::uint8_t* flags = s.touched.data();
  const detail::ScanScope scope{s.community_bound.data()};

  auto sweep = detail::for_each_vertex<Acc, RefineTotals>(
      n, workers, prototype, [&](VertexId i, Acc& acc, std::vector<Candidate>& links) -> RefineTotals {
        // Sub-community ids are vertex ids and i still sits in its own singleton.
        if (Access::load(flags[i]) != kUntouched) return {0, 1};
        const Weight to_self = detail::collect_links<Access>(g, i, i, sub, scope, acc, links);
        const auto choice = detail::best_move<Access>(links, i, to_self, k[i], totals, two_m);
        if (choice.target == i) return {0, 1};
        if (!Access::claim(flags[i], kUntouched, kLeft)) return {0, 1};
        Access::add(totals[i], -k[i]);
        Access::add(totals[choice.target], k[i]);
        Access::store(sub[i], choice.target);
        Access::store(flags[choice.target], kTouched);
        return {1, 1};
      });
  s.vertices_moved = sweep.moved;
  s.vertices_processed = sweep.processed;
}

}  // namespace

RefinementState refinement_pass(const Graph& g, std::span<const VertexId> bounds, const LouvainConfig& config) {
  config.validate();
  const std::size_t n = g.num_vertices();
  if (bounds.size() != n) throw std::invalid_argument("bounds do not cover the graph");
  RefinementState s;
  s.community_bound.assign(bounds.begin(), bounds.end());
  s.sub_membership.resize(n);
  std::iota(s.sub_membership.begin(), s.sub_membership.end(), VertexId{0});
  s.sub_totals = g.weighted_degrees();
  s.touched.assign(n, kUntouched);

  const int workers = config.workers();
  auto prototype = make_accumulator(config.strategy, n);
  std::visit(
      [&](const auto& proto) {
        if (workers <= 1)
          run_refinement<detail::PlainAccess>(g, s, proto, 1);
        else
          run_refinement<detail::AtomicAccess>(g, s, proto, workers);
      },
      prototype);
  for (auto& f : s.touched) f = f == kTouched ? 1 : 0;
  return s;
}

DetectionResult detect_leiden(const Graph& g, const LouvainConfig& config) {
  config.validate();
  DetectionResult result;
  result.workers = config.workers();
  const AccumulatorStrategy aggregation_strategy = config.strategy.for_aggregation();
  result.aux_memory_bytes_per_worker = std::max(aux_memory_bytes(config.strategy, g.num_vertices()),
                                                aux_memory_bytes(aggregation_strategy, g.num_vertices()));

  std::vector<VertexId> top(g.num_vertices());
  std::iota(top.begin(), top.end(), VertexId{0});
  std::optional<Graph> level_graph;
  const Graph* cur = &g;
  LouvainConfig pass_config = config;

  // Initial membership of the current level's vertices: singletons first,
  // then the bound community each super-vertex came from.
  std::vector<VertexId> initial(g.num_vertices());
  std::iota(initial.begin(), initial.end(), VertexId{0});

  for (int pass = 0; pass < config.max_passes; ++pass) {
    PassRecord rec;
    rec.vertex_count = cur->num_vertices();
    rec.graph_weight_2m = cur->total_weight_2m();

    CommunityAssignment a;
    a.membership = std::move(initial);
    a.community_total.assign(cur->num_vertices(), 0);
    {
      const auto k = cur->weighted_degrees();
      for (std::size_t v = 0; v < k.size(); ++v) a.community_total[a.membership[v]] += k[v];
    }
    auto t0 = std::chrono::steady_clock::now();
    const auto lm = local_moving_pass(*cur, a, pass_config);
    rec.local_moving_ms = detail::elapsed_ms(t0);
    rec.iterations = lm.iterations;
    rec.vertices_moved = lm.vertices_moved;
    rec.total_gain = lm.total_gain;
    rec.community_count = renumber_dense(a.membership);

    t0 = std::chrono::steady_clock::now();
    RefinementState refined = refinement_pass(*cur, a.membership, pass_config);
    rec.refinement_ms = detail::elapsed_ms(t0);
    const std::size_t sub_count = renumber_dense(refined.sub_membership);
    rec.refined_count = sub_count;
    for (auto& t : top) t = refined.sub_membership[t];

    const bool last = lm.vertices_moved == 0 || pass + 1 == config.max_passes ||
                      static_cast<double>(sub_count) > config.aggregation_stop_ratio * static_cast<double>(cur->num_vertices());
    if (last) {
      result.trace.push_back(rec);
      break;
    }

    t0 = std::chrono::steady_clock::now();
    Graph next = aggregate(*cur, refined.sub_membership, sub_count, aggregation_strategy, result.workers);
    rec.aggregation_ms = detail::elapsed_ms(t0);
    result.trace.push_back(rec);

    initial.assign(sub_count, 0);
    for (std::size_t v = 0; v < refined.sub_membership.size(); ++v)
      initial[refined.sub_membership[v]] = a.membership[v];
    level_graph = std::move(next);
    cur = &*level_graph;
    pass_config.iteration_tolerance /= config.tolerance_decline_factor;
  }

  result.assignment = recompute_community_totals(g, std::move(top));
  return result;
}

}  // namespace mgcomm
