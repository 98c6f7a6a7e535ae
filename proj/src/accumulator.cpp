#include "mgcomm/accumulator.hpp"

#include <cmath>

namespace mgcomm {

void AccumulatorStrategy::validate() const {
  switch (kind) {
    case StrategyKind::MisraGries:
      if (slots < 1 || slots > kMaxSketchSlots)
        throw ConfigError("misra_gries slots must be in [1, " + std::to_string(kMaxSketchSlots) + "]");
      break;
    case StrategyKind::SmallHash:
      if (!(slots_fraction > 0) || slots_fraction > 1) throw ConfigError("slots fraction must be in (0, 1]");
      break;
    case StrategyKind::FarKV:
    case StrategyKind::BoyerMoore:
      break;
  }
}

std::size_t AccumulatorStrategy::small_hash_slots(std::size_t vertex_count) const {
  const double s = std::round(slots_fraction * static_cast<double>(vertex_count));
  return s < 1 ? 1 : static_cast<std::size_t>(s);
}

std::string AccumulatorStrategy::label() const {
  switch (kind) {
    case StrategyKind::FarKV: return "far_kv";
    case StrategyKind::SmallHash: return "small_hash";
    case StrategyKind::BoyerMoore: return "bm";
    case StrategyKind::MisraGries:
      return "mg" + std::to_string(slots) + (policy == SubtractionPolicy::Unconditional ? "u" : "");
  }
  return "?";
}

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::FarKV: return "far_kv";
    case StrategyKind::SmallHash: return "small_hash";
    case StrategyKind::BoyerMoore: return "boyer_moore";
    case StrategyKind::MisraGries: return "misra_gries";
  }
  return "?";
}

std::string to_string(SubtractionPolicy policy) {
  return policy == SubtractionPolicy::Conditional ? "conditional" : "unconditional";
}

StrategyKind parse_strategy_kind(const std::string& name) {
  if (name == "far_kv" || name == "farkv") return StrategyKind::FarKV;
  if (name == "small_hash") return StrategyKind::SmallHash;
  if (name == "boyer_moore" || name == "bm") return StrategyKind::BoyerMoore;
  if (name == "misra_gries" || name == "mg") return StrategyKind::MisraGries;
  throw ConfigError("unknown strategy '" + name + "'");
}

SubtractionPolicy parse_subtraction_policy(const std::string& name) {
  if (name == "conditional") return SubtractionPolicy::Conditional;
  if (name == "unconditional") return SubtractionPolicy::Unconditional;
  throw ConfigError("unknown subtraction policy '" + name + "'");
}

AnyAccumulator make_accumulator(const AccumulatorStrategy& strategy, std::size_t vertex_count) {
  strategy.validate();
  switch (strategy.kind) {
    case StrategyKind::FarKV: return FarKVTable(vertex_count);
    case StrategyKind::SmallHash: return SmallHashTable(strategy.small_hash_slots(vertex_count));
    case StrategyKind::BoyerMoore: return BoyerMooreVote();
    case StrategyKind::MisraGries: return MisraGriesSketch(strategy.slots, strategy.policy);
  }
  throw ConfigError("unknown strategy");
}

void accumulate(AnyAccumulator& acc, VertexId community, Weight w) {
  std::visit([&](auto& a) { a.accumulate(community, w); }, acc);
}

std::vector<Candidate> candidates(const AnyAccumulator& acc) {
  std::vector<Candidate> out;
  std::visit([&](const auto& a) { a.for_each([&](VertexId c, Weight w) { out.push_back({c, w}); }); }, acc);
  return out;
}

std::size_t clear(AnyAccumulator& acc) {
  return std::visit([](auto& a) { return a.clear(); }, acc);
}

std::size_t aux_memory_bytes(const AnyAccumulator& acc) {
  return std::visit([](const auto& a) { return a.aux_memory_bytes(); }, acc);
}

std::size_t aux_memory_bytes(const AccumulatorStrategy& strategy, std::size_t vertex_count) {
  return aux_memory_bytes(make_accumulator(strategy, vertex_count));
}

}  // namespace mgcomm
