#pragma once

#include <span>
#include <vector>

#include "mgcomm/accumulator.hpp"
#include "mgcomm/louvain.hpp"

namespace mgcomm {

struct LpaConfig {
  AccumulatorStrategy strategy = AccumulatorStrategy::misra_gries(8);
  /// 2: re-weigh sketch candidates with an exact scan; 1: trust sketch values.
  int scans = 2;
  /// Stop once fewer than this fraction of vertices change label in an iteration.
  double tolerance = 0.05;
  int max_iterations = 20;
  bool deterministic = false;
  int threads = 0;
  std::uint64_t seed = 0;

  void validate() const;
  int workers() const;
};

struct LpaResult {
  DetectionResult detection;
  std::vector<double> changed_fraction;  // one entry per iteration
};

/// Highest weight wins; ties prefer `current_label`, then the smallest label.
/// An empty list keeps `current_label`.
VertexId label_argmax(std::span<const Candidate> candidates, VertexId current_label);

/// Asynchronous label propagation from unique labels; final labels are densely renumbered.
LpaResult detect_lpa(const Graph& g, const LpaConfig& config);

}  // namespace mgcomm
