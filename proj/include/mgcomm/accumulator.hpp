#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "mgcomm/graph.hpp"

namespace mgcomm {

enum class StrategyKind { FarKV, SmallHash, BoyerMoore, MisraGries };
enum class SubtractionPolicy { Conditional, Unconditional };

/// Invalid strategy or algorithm parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxSketchSlots = 256;
inline constexpr double kDefaultSlotsFraction = 3e-4;

/// Which neighbor-community accumulator a run uses, plus its parameters.
/// `slots` and `policy` only apply to Misra-Gries, `slots_fraction` only to
/// the small hashtable.
struct AccumulatorStrategy {
  StrategyKind kind = StrategyKind::FarKV;
  int slots = 8;
  SubtractionPolicy policy = SubtractionPolicy::Conditional;
  double slots_fraction = kDefaultSlotsFraction;

  static AccumulatorStrategy far_kv() { return {}; }
  static AccumulatorStrategy small_hash(double fraction = kDefaultSlotsFraction) {
    return {StrategyKind::SmallHash, 8, SubtractionPolicy::Conditional, fraction};
  }
  static AccumulatorStrategy boyer_moore() { return {StrategyKind::BoyerMoore, 1, SubtractionPolicy::Conditional}; }
  static AccumulatorStrategy misra_gries(int k, SubtractionPolicy policy = SubtractionPolicy::Conditional) {
    return {StrategyKind::MisraGries, k, policy};
  }

  /// Throws ConfigError when the parameters are out of range.
  void validate() const;

  /// Slot count of the small hashtable for a graph with `vertex_count` vertices.
  std::size_t small_hash_slots(std::size_t vertex_count) const;

  /// True for strategies whose candidate weights are estimates that need an
  /// exact second scan before use (Boyer-Moore, Misra-Gries).
  bool is_sketch() const noexcept { return kind == StrategyKind::BoyerMoore || kind == StrategyKind::MisraGries; }

  /// The strategy used for the aggregation phase. Boyer-Moore collapses
  /// aggregation into chains, so it is replaced by a 4-slot Misra-Gries sketch.
  AccumulatorStrategy for_aggregation() const {
    if (kind == StrategyKind::BoyerMoore) return misra_gries(4, policy);
    return *this;
  }

  /// Short label such as "far_kv", "small_hash", "bm", "mg8", "mg8u".
  std::string label() const;

  friend bool operator==(const AccumulatorStrategy&, const AccumulatorStrategy&) = default;
};

std::string to_string(StrategyKind kind);
std::string to_string(SubtractionPolicy policy);
StrategyKind parse_strategy_kind(const std::string& name);
SubtractionPolicy parse_subtraction_policy(const std::string& name);

/// One (community, weight) pair reported by an accumulator.
struct Candidate {
  VertexId community;
  Weight weight;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/**
 * Collision-free per-worker table: a dense values array indexed by community
 * id and a list of the keys touched since the last clear. Clearing costs
 * O(touched keys).
 */
class FarKVTable {
 public:
  explicit FarKVTable(std::size_t vertex_count) : values_(vertex_count, 0) { keys_.reserve(vertex_count); }

  void accumulate(VertexId community, Weight w) {
    if (values_[community] == 0) keys_.push_back(community);
    values_[community] += w;
  }

  template <class F>
  void for_each(F&& f) const {
    for (VertexId c : keys_) f(c, values_[c]);
  }

  /// Accumulated weight towards `community` (0 when untouched).
  Weight value_of(VertexId community) const { return values_[community]; }

  std::size_t key_count() const noexcept { return keys_.size(); }

  /// Resets only the registered keys; returns how many values were reset.
  std::size_t clear() {
    for (VertexId c : keys_) values_[c] = 0;
    std::size_t n = keys_.size();
    keys_.clear();
    return n;
  }

  std::size_t aux_memory_bytes() const noexcept {
    return values_.capacity() * sizeof(Weight) + keys_.capacity() * sizeof(VertexId) + sizeof(std::size_t);
  }

 private:
  std::vector<Weight> values_;
  std::vector<VertexId> keys_;
};

/**
 * Shrunk values array addressed by `community mod slots`. Colliding
 * communities share a slot; the slot keeps the first community that touched
 * it as its key.
 */
class SmallHashTable {
 public:
  explicit SmallHashTable(std::size_t slots) : values_(std::max<std::size_t>(slots, 1), 0), owners_(values_.size(), kNoVertex) {
    keys_.reserve(values_.size());
  }

  std::size_t slot_count() const noexcept { return values_.size(); }

  void accumulate(VertexId community, Weight w) {
    const std::size_t s = community % values_.size();
    if (values_[s] == 0) {
      keys_.push_back(static_cast<VertexId>(s));
      owners_[s] = community;
    }
    values_[s] += w;
  }

  template <class F>
  void for_each(F&& f) const {
    for (VertexId s : keys_) f(owners_[s], values_[s]);
  }

  /// Weight stored in the slot `community` maps to (collision-merged).
  Weight value_of(VertexId community) const { return values_[community % values_.size()]; }

  std::size_t clear() {
    for (VertexId s : keys_) {
      values_[s] = 0;
      owners_[s] = kNoVertex;
    }
    std::size_t n = keys_.size();
    keys_.clear();
    return n;
  }

  std::size_t aux_memory_bytes() const noexcept {
    return values_.capacity() * sizeof(Weight) + owners_.capacity() * sizeof(VertexId) +
           keys_.capacity() * sizeof(VertexId);
  }

 private:
  std::vector<Weight> values_;
  std::vector<VertexId> owners_;
  std::vector<VertexId> keys_;
};

/**
 * Weighted Boyer-Moore majority vote: a single candidate and its vote weight.
 *
 * A mismatching add cancels min(weight, vote) from both sides; any remainder
 * of the incoming weight takes over the candidate slot. When the vote drops to
 * exactly 0 the old id is kept but reported as empty, and the next add
 * replaces it. This is the one-slot case of MisraGriesSketch under the
 * conditional policy.
 */
class BoyerMooreVote {
 public:
  void accumulate(VertexId community, Weight w) {
    if (vote_ > 0 && candidate_ == community) {
      vote_ += w;
    } else if (vote_ == 0) {
      candidate_ = community;
      vote_ = w;
    } else if (w <= vote_) {
      vote_ -= w;
    } else {
      candidate_ = community;
      vote_ = w - vote_;
    }
  }

  template <class F>
  void for_each(F&& f) const {
    if (vote_ > 0) f(candidate_, vote_);
  }

  VertexId candidate() const noexcept { return candidate_; }
  Weight vote_weight() const noexcept { return vote_; }

  std::size_t clear() {
    candidate_ = kNoVertex;
    vote_ = 0;
    return 1;
  }

  std::size_t aux_memory_bytes() const noexcept { return sizeof(VertexId) + sizeof(Weight); }

 private:
  VertexId candidate_ = kNoVertex;
  Weight vote_ = 0;
};

/**
 * Weighted Misra-Gries sketch with k slots.
 *
 * A slot is empty iff its value is exactly 0. Each add first accumulates into
 * a slot holding the same key, then (if the key is absent) claims an empty
 * slot, and otherwise decays the sketch:
 *  - Conditional: subtract d = min(w, smallest slot value) from every slot;
 *    if w exceeds d, the remainder w - d is inserted into a slot that just
 *    emptied. With w <= every slot value this is a plain subtract-w step.
 *  - Unconditional: subtract w from every slot (clamped at 0) whenever the key
 *    is absent, then insert the key into an empty slot if one exists.
 *
 * Under the conditional policy every key whose exact weight exceeds W/(k+1)
 * is a candidate, and estimates undercount by at most W/(k+1).
 * The scans run over all k slots without early exit.
 */
class MisraGriesSketch {
 public:
  explicit MisraGriesSketch(int slots, SubtractionPolicy policy = SubtractionPolicy::Conditional)
      : keys_(static_cast<std::size_t>(slots), kNoVertex), values_(static_cast<std::size_t>(slots), 0), policy_(policy) {}

  int slot_count() const noexcept { return static_cast<int>(keys_.size()); }
  SubtractionPolicy policy() const noexcept { return policy_; }

  void accumulate(VertexId community, Weight w) {
    const std::size_t k = keys_.size();
    bool has = false;
    for (std::size_t p = 0; p < k; ++p) {
      const bool match = keys_[p] == community;
      values_[p] += match ? w : 0;
      has |= match;
    }
    if (has) return;
    if (policy_ == SubtractionPolicy::Unconditional) {
      for (std::size_t p = 0; p < k; ++p) values_[p] = std::max<Weight>(values_[p] - w, 0);
      insert_if_empty(community, w);
      return;
    }
    if (insert_if_empty(community, w)) return;
    Weight low = w;
    for (std::size_t p = 0; p < k; ++p) low = std::min(low, values_[p]);
    for (std::size_t p = 0; p < k; ++p) values_[p] = std::max<Weight>(values_[p] - low, 0);
    if (w > low) insert_if_empty(community, w - low);
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t p = 0; p < keys_.size(); ++p)
      if (values_[p] > 0) f(keys_[p], values_[p]);
  }

  const std::vector<VertexId>& slot_keys() const noexcept { return keys_; }
  const std::vector<Weight>& slot_values() const noexcept { return values_; }

  std::size_t clear() {
    std::fill(keys_.begin(), keys_.end(), kNoVertex);
    std::fill(values_.begin(), values_.end(), Weight{0});
    return keys_.size();
  }

  std::size_t aux_memory_bytes() const noexcept {
    return keys_.size() * sizeof(VertexId) + values_.size() * sizeof(Weight);
  }

 private:
  bool insert_if_empty(VertexId community, Weight w) {
    std::ptrdiff_t empty = -1;
    for (std::size_t p = 0; p < keys_.size(); ++p)
      if (values_[p] == 0) empty = static_cast<std::ptrdiff_t>(p);
    if (empty < 0) return false;
    keys_[static_cast<std::size_t>(empty)] = community;
    values_[static_cast<std::size_t>(empty)] = w;
    return true;
  }

  std::vector<VertexId> keys_;
  std::vector<Weight> values_;
  SubtractionPolicy policy_;
};

/// Runtime-selected accumulator. Kernels dispatch once per phase with
/// `std::visit` and then run against the concrete type.
using AnyAccumulator = std::variant<FarKVTable, SmallHashTable, BoyerMooreVote, MisraGriesSketch>;

/// Creates the accumulator for `strategy` sized for a graph of `vertex_count` vertices.
AnyAccumulator make_accumulator(const AccumulatorStrategy& strategy, std::size_t vertex_count);

void accumulate(AnyAccumulator& acc, VertexId community, Weight w);
std::vector<Candidate> candidates(const AnyAccumulator& acc);
std::size_t clear(AnyAccumulator& acc);
std::size_t aux_memory_bytes(const AnyAccumulator& acc);

/// Scratch bytes one worker holds for `strategy` on a graph of `vertex_count` vertices.
std::size_t aux_memory_bytes(const AccumulatorStrategy& strategy, std::size_t vertex_count);

}  // namespace mgcomm
