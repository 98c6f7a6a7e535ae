#include "mgcomm/quality.hpp"

#include <algorithm>
#include <limits>

namespace mgcomm {

std::size_t renumber_dense(std::span<VertexId> membership) {
  VertexId max_id = 0;
  for (VertexId c : membership) max_id = std::max(max_id, c);
  std::vector<VertexId> remap(membership.empty() ? 0 : static_cast<std::size_t>(max_id) + 1, kNoVertex);
  VertexId next = 0;
  for (VertexId& c : membership) {
    if (remap[c] == kNoVertex) remap[c] = next++;
    c = remap[c];
  }
  return next;
}

CommunityAssignment recompute_community_totals(const Graph& g, std::vector<VertexId> membership) {
  if (membership.size() != g.num_vertices()) throw std::invalid_argument("membership size does not match graph");
  CommunityAssignment a;
  a.community_count = renumber_dense(membership);
  a.membership = std::move(membership);
  a.community_total.assign(a.community_count, 0);
  const auto k = g.weighted_degrees();
  for (std::size_t v = 0; v < k.size(); ++v) a.community_total[a.membership[v]] += k[v];
  return a;
}

double modularity(const Graph& g, std::span<const VertexId> membership) {
  const std::size_t n = g.num_vertices();
  if (membership.size() != n) throw std::invalid_argument("membership size does not match graph");
  const double two_m = g.total_weight_2m();
  if (!(two_m > 0)) throw QualityUndefinedError("modularity is undefined for a graph with no edge weight");

  // Per-vertex partials in parallel, then an index-ordered reduction so the
  // result does not depend on the worker count.
  std::vector<double> internal(n, 0), degree(n, 0);
  const auto offsets = g.offsets();
  const auto targets = g.neighbor_ids();
  const auto weights = g.edge_weights();
#pragma omp parallel for schedule(static, 2048)
  for (std::size_t v = 0; v < n; ++v) {
    double in = 0, k = 0;
    for (std::size_t e = offsets[v]; e < offsets[v + 1]; ++e) {
      k += weights[e];
      if (membership[targets[e]] == membership[v]) in += weights[e];
    }
    internal[v] = in;
    degree[v] = k;
  }

  VertexId max_id = 0;
  for (VertexId c : membership) max_id = std::max(max_id, c);
  std::vector<double> sigma(n ? max_id + 1 : 0, 0), total(n ? max_id + 1 : 0, 0);
  for (std::size_t v = 0; v < n; ++v) {
    sigma[membership[v]] += internal[v];
    total[membership[v]] += degree[v];
  }
  double q = 0;
  for (std::size_t c = 0; c < sigma.size(); ++c) {
    const double frac = total[c] / two_m;
    q += sigma[c] / two_m - frac * frac;
  }
  return q;
}

}  // namespace mgcomm
