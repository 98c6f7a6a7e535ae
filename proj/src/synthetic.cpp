#include "mgcomm/synthetic.hpp"

#include <cmath>
#include <random>

#include "mgcomm/accumulator.hpp"

namespace mgcomm {

PlantedPartition generate_planted_partition(const PlantedPartitionParams& p) {
  if (p.vertices < 2 || p.min_community < 2 || p.max_community < p.min_community)
    throw ConfigError("invalid planted partition parameters");
  std::mt19937_64 rng(p.seed);

  // Inverse-CDF sampling of a truncated power law for community sizes.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double a = 1.0 - p.size_exponent;
  const double lo = std::pow(static_cast<double>(p.min_community), a);
  const double hi = std::pow(static_cast<double>(p.max_community), a);
  std::vector<std::size_t> starts{0};
  while (starts.back() < p.vertices) {
    auto size = static_cast<std::size_t>(std::pow(lo + (hi - lo) * unit(rng), 1.0 / a));
    size = std::clamp(size, p.min_community, p.max_community);
    starts.push_back(std::min(p.vertices, starts.back() + size));
  }
  // Fold a tiny trailing community into its predecessor.
  if (starts.size() > 2 && starts[starts.size() - 1] - starts[starts.size() - 2] < p.min_community)
    starts.erase(starts.end() - 2);

  PlantedPartition out;
  out.ground_truth.resize(p.vertices);
  std::vector<DirectedEntry> entries;
  const auto expected_edges = static_cast<std::size_t>(p.vertices * (p.intra_degree + p.inter_degree));
  entries.reserve(expected_edges);
  std::uniform_int_distribution<std::size_t> any_vertex(0, p.vertices - 1);
  for (std::size_t c = 0; c + 1 < starts.size(); ++c) {
    const std::size_t begin = starts[c], end = starts[c + 1], size = end - begin;
    for (std::size_t v = begin; v < end; ++v) out.ground_truth[v] = static_cast<VertexId>(c);
    // Each endpoint initiates half of its expected degree.
    const double per_vertex_intra = std::min(p.intra_degree, static_cast<double>(size - 1)) / 2;
    std::uniform_int_distribution<std::size_t> member(begin, end - 1);
    std::poisson_distribution<int> intra(per_vertex_intra), inter(p.inter_degree / 2);
    for (std::size_t v = begin; v < end; ++v) {
      for (int e = intra(rng); e > 0; --e) {
        const std::size_t u = member(rng);
        if (u == v) continue;
        entries.push_back({static_cast<VertexId>(v), static_cast<VertexId>(u), 1.0});
        entries.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), 1.0});
      }
      for (int e = inter(rng); e > 0; --e) {
        const std::size_t u = any_vertex(rng);
        if (u == v) continue;
        entries.push_back({static_cast<VertexId>(v), static_cast<VertexId>(u), 1.0});
        entries.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), 1.0});
      }
    }
  }
  out.graph = Graph::from_directed_entries(p.vertices, std::move(entries));
  return out;
}

}  // namespace mgcomm
