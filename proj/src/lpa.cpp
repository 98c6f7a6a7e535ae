#include "mgcomm/lpa.hpp"

#include <omp.h>

#include <numeric>

#include "kernels.hpp"

namespace mgcomm {

void LpaConfig::validate() const {
  strategy.validate();
  if (scans != 1 && scans != 2) throw ConfigError("scans must be 1 or 2");
  if (!(tolerance > 0 && tolerance < 1)) throw ConfigError("LPA tolerance must be in (0, 1)");
  if (max_iterations < 1) throw ConfigError("max iterations must be >= 1");
  if (threads < 0) throw ConfigError("thread count must be >= 0");
}

int LpaConfig::workers() const {
  if (deterministic) return 1;
  return threads > 0 ? threads : omp_get_max_threads();
}

VertexId label_argmax(std::span<const Candidate> candidates, VertexId current_label) {
  VertexId best = current_label;
  Weight best_weight = -1;
  for (const auto& c : candidates) {
    const bool better = c.weight > best_weight ||
                        (c.weight == best_weight && best != current_label &&
                         (c.community == current_label || c.community < best));
    if (better) {
      best = c.community;
      best_weight = c.weight;
    }
  }
  return best;
}

namespace {

template <class Access, class Acc>
std::size_t lpa_sweep(const Graph& g, std::vector<VertexId>& labels, const LpaConfig& config, const Acc& prototype,
                      int workers) {
  VertexId* label = labels.data();
  return detail::for_each_vertex<Acc, std::size_t>(
      g.num_vertices(), workers, prototype, [&](VertexId i, Acc& acc, std::vector<Candidate>& links) -> std::size_t {
        const VertexId current = Access::load(label[i]);
        detail::gather_candidates<Access>(g, i, label, {}, acc, links);
        if constexpr (!detail::kExactValues<Acc>) {
          // The exact scan skips `current` in its own tally, so put it back
          // into the candidate it belongs to.
          if (config.scans == 2) {
            const Weight to_current = detail::rescan_exact<Access>(g, i, current, label, {}, links);
            for (auto& c : links)
              if (c.community == current) c.weight = to_current;
          }
        }
        const VertexId next = label_argmax(links, current);
        if (next == current) return 0;
        Access::store(label[i], next);
        return 1;
      });
}

}  // namespace

LpaResult detect_lpa(const Graph& g, const LpaConfig& config) {
  config.validate();
  const std::size_t n = g.num_vertices();
  LpaResult result;
  auto& det = result.detection;
  det.workers = config.workers();
  det.aux_memory_bytes_per_worker = aux_memory_bytes(config.strategy, n);

  std::vector<VertexId> labels(n);
  std::iota(labels.begin(), labels.end(), VertexId{0});
  PassRecord rec;
  rec.vertex_count = n;
  rec.graph_weight_2m = g.total_weight_2m();
  const auto t0 = std::chrono::steady_clock::now();

  auto prototype = make_accumulator(config.strategy, n);
  std::visit(
      [&](const auto& proto) {
        for (int it = 0; it < config.max_iterations; ++it) {
          const std::size_t changed = det.workers <= 1
                                          ? lpa_sweep<detail::PlainAccess>(g, labels, config, proto, 1)
                                          : lpa_sweep<detail::AtomicAccess>(g, labels, config, proto, det.workers);
          ++rec.iterations;
          rec.vertices_moved += changed;
          const double fraction = n ? static_cast<double>(changed) / static_cast<double>(n) : 0.0;
          result.changed_fraction.push_back(fraction);
          if (fraction < config.tolerance) break;
        }
      },
      prototype);

  rec.local_moving_ms = detail::elapsed_ms(t0);
  det.assignment = recompute_community_totals(g, std::move(labels));
  rec.community_count = det.assignment.community_count;
  det.trace.push_back(rec);
  return result;
}

}  // namespace mgcomm
