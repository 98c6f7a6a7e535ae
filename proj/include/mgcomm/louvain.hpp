#pragma once

#include <cstdint>
#include <vector>

#include "mgcomm/accumulator.hpp"
#include "mgcomm/graph.hpp"
#include "mgcomm/quality.hpp"

namespace mgcomm {

/// Convergence and execution parameters shared by Louvain and Leiden.
struct LouvainConfig {
  AccumulatorStrategy strategy = AccumulatorStrategy::misra_gries(8);
  /// A local-moving round stops once a sweep's summed delta-modularity falls below this.
  double iteration_tolerance = 1e-2;
  /// The tolerance is divided by this after every pass.
  double tolerance_decline_factor = 10;
  int max_iterations = 20;
  int max_passes = 10;
  /// Aggregation stops once a pass keeps more than this fraction of vertices.
  double aggregation_stop_ratio = 0.8;
  /// Single worker, ascending vertex order; runs are reproducible bit for bit.
  bool deterministic = false;
  /// Worker count when not deterministic; 0 means every available OpenMP thread.
  int threads = 0;
  /// Recorded for reproducibility; no step of the algorithms draws random numbers.
  std::uint64_t seed = 0;

  void validate() const;
  /// Number of workers a run with this configuration uses.
  int workers() const;
};

/// Per-pass bookkeeping.
struct PassRecord {
  std::size_t vertex_count = 0;    // vertices of the graph this pass ran on
  double graph_weight_2m = 0;      // its total_weight_2m
  int iterations = 0;              // local-moving sweeps
  std::size_t vertices_moved = 0;  // moves summed over all sweeps
  double total_gain = 0;           // delta-modularity summed over all sweeps
  std::size_t community_count = 0;
  std::size_t refined_count = 0;   // Leiden only: sub-communities after refinement
  double local_moving_ms = 0;
  double refinement_ms = 0;
  double aggregation_ms = 0;
};

using PassTrace = std::vector<PassRecord>;

struct DetectionResult {
  CommunityAssignment assignment;  // on the input graph, densely numbered
  PassTrace trace;
  int workers = 1;
  /// Accumulator scratch held by one worker (largest over the phases).
  std::size_t aux_memory_bytes_per_worker = 0;
  std::size_t aux_memory_bytes() const noexcept { return aux_memory_bytes_per_worker * static_cast<std::size_t>(workers); }
};

struct LocalMovingResult {
  int iterations = 0;
  std::size_t vertices_moved = 0;
  double total_gain = 0;
};

/**
 * Greedy local-moving sweeps until a sweep's summed gain drops below
 * `config.iteration_tolerance` or `config.max_iterations` is reached.
 *
 * `assignment.membership` holds community ids below |V| and
 * `assignment.community_total` must be indexable by them and consistent with
 * `g`. Both are updated in place; ids are not renumbered.
 */
LocalMovingResult local_moving_pass(const Graph& g, CommunityAssignment& assignment, const LouvainConfig& config);

/**
 * For every community c, accumulates (community of j, w_ij) over all edges of
 * its members (self-loops included) and emits each candidate as (c, d, weight).
 * Sketch strategies emit their estimates as-is. `membership` must be densely
 * numbered with `community_count` communities. Output is grouped by c in
 * ascending order regardless of the worker count.
 */
std::vector<AggregateEdge> aggregation_pass(const Graph& g, std::span<const VertexId> membership,
                                            std::size_t community_count, const AccumulatorStrategy& strategy,
                                            int workers = 1);

/// Builds the super-vertex graph, reconciling directions as the strategy requires.
Graph aggregate(const Graph& g, std::span<const VertexId> membership, std::size_t community_count,
                const AccumulatorStrategy& strategy, int workers = 1);

/// Multi-pass Louvain starting from singletons.
DetectionResult detect_louvain(const Graph& g, const LouvainConfig& config);

/// Default configuration for Louvain: 8-slot Misra-Gries sketch.
inline LouvainConfig default_louvain_config() { return {}; }

}  // namespace mgcomm
