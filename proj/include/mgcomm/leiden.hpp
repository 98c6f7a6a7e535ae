#pragma once

#include <vector>

#include "mgcomm/louvain.hpp"

namespace mgcomm {

/// Outcome of one refinement pass.
struct RefinementState {
  std::vector<VertexId> community_bound;  // C_B, fixed during refinement
  std::vector<VertexId> sub_membership;   // refined sub-community of each vertex
  std::vector<Weight> sub_totals;         // Sigma of each sub-community
  std::vector<std::uint8_t> touched;      // sub-community has absorbed another vertex
  std::size_t vertices_processed = 0;
  std::size_t vertices_moved = 0;
};

/**
 * Leiden refinement. Every vertex starts as its own sub-community and is
 * visited once. A vertex may merge into a neighboring sub-community inside
 * its bound only while no other vertex has joined its own sub-community; the
 * best positive delta-modularity target wins and is marked touched.
 */
RefinementState refinement_pass(const Graph& g, std::span<const VertexId> bounds, const LouvainConfig& config);

/// Multi-pass Leiden: local-moving, refinement, aggregation over refined
/// sub-communities. Returns the refined partition of the last pass.
DetectionResult detect_leiden(const Graph& g, const LouvainConfig& config);

/// Default configuration for Leiden: 64-slot Misra-Gries sketch.
inline LouvainConfig default_leiden_config() {
  LouvainConfig c;
  c.strategy = AccumulatorStrategy::misra_gries(64);
  return c;
}

}  // namespace mgcomm
