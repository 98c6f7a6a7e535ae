// Shared per-vertex kernels for local-moving, refinement, label propagation
// and aggregation. Each kernel is instantiated twice: with PlainAccess for the
// serial reference path and with AtomicAccess for the OpenMP path, where
// neighbor reads may be stale and community totals are updated atomically.
#pragma once

#include <omp.h>

#include <atomic>
#include <chrono>
#include <type_traits>
#include <vector>

#include "mgcomm/accumulator.hpp"
#include "mgcomm/graph.hpp"
#include "mgcomm/quality.hpp"

namespace mgcomm::detail {

struct PlainAccess {
  template <class T>
  static T load(const T& x) {
    return x;
  }
  template <class T>
  static void store(T& x, T v) {
    x = v;
  }
  static void add(Weight& x, Weight d) { x += d; }
  static bool claim(std::uint8_t& flag, std::uint8_t from, std::uint8_t to) {
    if (flag != from) return false;
    flag = to;
    return true;
  }
};

struct AtomicAccess {
  template <class T>
  static T load(const T& x) {
    return std::atomic_ref<T>(const_cast<T&>(x)).load(std::memory_order_relaxed);
  }
  template <class T>
  static void store(T& x, T v) {
    std::atomic_ref<T>(x).store(v, std::memory_order_relaxed);
  }
  static void add(Weight& x, Weight d) { std::atomic_ref<Weight>(x).fetch_add(d, std::memory_order_relaxed); }
  static bool claim(std::uint8_t& flag, std::uint8_t from, std::uint8_t to) {
    return std::atomic_ref<std::uint8_t>(flag).compare_exchange_strong(from, to, std::memory_order_acq_rel);
  }
};

template <class Acc>
inline constexpr bool kExactValues = std::is_same_v<Acc, FarKVTable> || std::is_same_v<Acc, SmallHashTable>;

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

/// Edge filter for neighbor scans: self is always skipped, and during
/// refinement neighbors outside i's bound are skipped too.
struct ScanScope {
  const VertexId* bounds = nullptr;
  bool admits(VertexId i, VertexId j) const { return i != j && (!bounds || bounds[i] == bounds[j]); }
};

/// Fills `acc` with (community of j, w_ij) over admitted neighbors and copies
/// its candidates into `out`.
template <class Access, class Acc>
void gather_candidates(const Graph& g, VertexId i, const VertexId* membership, ScanScope scope, Acc& acc,
                       std::vector<Candidate>& out) {
  acc.clear();
  const auto nbrs = g.neighbors(i);
  const auto ws = g.weights(i);
  for (std::size_t p = 0; p < nbrs.size(); ++p) {
    const VertexId j = nbrs[p];
    if (!scope.admits(i, j)) continue;
    acc.accumulate(Access::load(membership[j]), ws[p]);
  }
  out.clear();
  acc.for_each([&](VertexId c, Weight w) { out.push_back({c, w}); });
}

/// Second scan: replaces each candidate's weight with its exact linking weight
/// and returns the exact linking weight to `current`.
template <class Access>
Weight rescan_exact(const Graph& g, VertexId i, VertexId current, const VertexId* membership, ScanScope scope,
                    std::vector<Candidate>& out) {
  for (auto& c : out) c.weight = 0;
  Weight to_current = 0;
  const auto nbrs = g.neighbors(i);
  const auto ws = g.weights(i);
  const std::size_t n = out.size();
  for (std::size_t p = 0; p < nbrs.size(); ++p) {
    const VertexId j = nbrs[p];
    if (!scope.admits(i, j)) continue;
    const VertexId c = Access::load(membership[j]);
    if (c == current) {
      to_current += ws[p];
      continue;
    }
    for (std::size_t q = 0; q < n; ++q) out[q].weight += out[q].community == c ? ws[p] : 0;
  }
  return to_current;
}

/// Candidate linking weights plus K_{i->current}: sketches get an exact second
/// scan, the hashtables report their accumulated values directly.
template <class Access, class Acc>
Weight collect_links(const Graph& g, VertexId i, VertexId current, const VertexId* membership, ScanScope scope,
                     Acc& acc, std::vector<Candidate>& out) {
  gather_candidates<Access>(g, i, membership, scope, acc, out);
  if constexpr (kExactValues<Acc>) {
    return acc.value_of(current);
  } else {
    return rescan_exact<Access>(g, i, current, membership, scope, out);
  }
}

struct MoveChoice {
  VertexId target;
  double gain;
};

/// Best positive-gain target among `links`; ties prefer staying, then the
/// smallest community id.
template <class Access>
MoveChoice best_move(const std::vector<Candidate>& links, VertexId current, Weight to_current, Weight k_i,
                     const Weight* totals, double two_m) {
  MoveChoice best{current, 0};
  const Weight sigma_d = Access::load(totals[current]);
  for (const auto& c : links) {
    if (c.community == current) continue;
    const double gain =
        delta_modularity(c.weight, to_current, k_i, Access::load(totals[c.community]), sigma_d, two_m);
    if (gain > best.gain || (gain == best.gain && best.target != current && c.community < best.target))
      best = {c.community, gain};
  }
  return best;
}

/// Runs `body(i, acc, buffer)` over every vertex, returning the summed
/// results. One worker walks vertices in ascending order; more workers use
/// dynamic chunks with a private accumulator copy each.
template <class Acc, class Result, class Body>
Result for_each_vertex(std::size_t n, int workers, const Acc& prototype, Body&& body) {
  if (workers <= 1) {
    Acc acc = prototype;
    std::vector<Candidate> buffer;
    Result total{};
    for (std::size_t i = 0; i < n; ++i) total += body(static_cast<VertexId>(i), acc, buffer);
    return total;
  }
  std::vector<Result> partial(static_cast<std::size_t>(workers));
#pragma omp parallel num_threads(workers)
  {
    Acc acc = prototype;
    std::vector<Candidate> buffer;
    Result local{};
#pragma omp for schedule(dynamic, 2048) nowait
    for (std::size_t i = 0; i < n; ++i) local += body(static_cast<VertexId>(i), acc, buffer);
    partial[static_cast<std::size_t>(omp_get_thread_num())] = local;
  }
  Result total{};
  for (const auto& r : partial) total += r;
  return total;
}

struct SweepTotals {
  std::size_t moved = 0;
  double gain = 0;
  SweepTotals& operator+=(const SweepTotals& o) {
    moved += o.moved;
    gain += o.gain;
    return *this;
  }
};

/// Members of each community as CSR: members[offsets[c] .. offsets[c+1]).
struct CommunityMembers {
  std::vector<std::size_t> offsets;
  std::vector<VertexId> members;
};

inline CommunityMembers group_members(std::span<const VertexId> membership, std::size_t community_count) {
  CommunityMembers cm;
  cm.offsets.assign(community_count + 1, 0);
  for (VertexId c : membership) ++cm.offsets[c + 1];
  for (std::size_t c = 0; c < community_count; ++c) cm.offsets[c + 1] += cm.offsets[c];
  cm.members.resize(membership.size());
  std::vector<std::size_t> cursor(cm.offsets.begin(), cm.offsets.end() - 1);
  for (std::size_t v = 0; v < membership.size(); ++v) cm.members[cursor[membership[v]]++] = static_cast<VertexId>(v);
  return cm;
}

}  // namespace mgcomm::detail
