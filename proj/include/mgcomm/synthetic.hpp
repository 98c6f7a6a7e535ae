#pragma once

#include <cstdint>
#include <vector>

#include "mgcomm/graph.hpp"

namespace mgcomm {

/// LFR-style planted partition: power-law community sizes, a fixed expected
/// intra-community degree and a smaller expected degree to random vertices
/// anywhere in the graph. Each draw adds weight 1, so repeated pairs merge
/// into heavier edges.
struct PlantedPartitionParams {
  std::size_t vertices = 10000;
  std::size_t min_community = 20;
  std::size_t max_community = 400;
  double size_exponent = 1.5;
  double intra_degree = 12;
  double inter_degree = 3;
  std::uint64_t seed = 42;
};

struct PlantedPartition {
  Graph graph;
  std::vector<VertexId> ground_truth;
};

PlantedPartition generate_planted_partition(const PlantedPartitionParams& params);

}  // namespace mgcomm
