#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "mgcomm/graph.hpp"

namespace mgcomm {

/// Modularity is undefined on a graph without edge weight (2m = 0).
class QualityUndefinedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Vertex -> community mapping with per-community total degree (Sigma_c).
struct CommunityAssignment {
  std::vector<VertexId> membership;
  std::vector<Weight> community_total;
  std::size_t community_count = 0;
};

/// Rewrites `membership` in place so ids are 0..count-1 in order of first
/// appearance; returns the number of distinct communities.
std::size_t renumber_dense(std::span<VertexId> membership);

/// Sigma_c = sum of K_i over the members of c, after dense renumbering.
CommunityAssignment recompute_community_totals(const Graph& g, std::vector<VertexId> membership);

/// Q = sum_c [ sigma_c / 2m - (Sigma_c / 2m)^2 ], where sigma_c sums the
/// stored entries with both endpoints in c. Throws QualityUndefinedError when
/// 2m = 0.
double modularity(const Graph& g, std::span<const VertexId> membership);
inline double modularity(const Graph& g, const CommunityAssignment& a) { return modularity(g, a.membership); }

/// Gain in Q from moving vertex i out of community d into community c:
///   (K_ic - K_id) / m  -  K_i (K_i + Sigma_c - Sigma_d) / (2 m^2)
/// with m = two_m / 2. Sigma_d still includes K_i and K_id excludes any
/// self-loop of i.
inline double delta_modularity(Weight k_i_to_c, Weight k_i_to_d, Weight k_i, Weight sigma_c, Weight sigma_d,
                               Weight two_m) {
  const double m = two_m / 2;
  return (k_i_to_c - k_i_to_d) / m - k_i * (k_i + sigma_c - sigma_d) / (2 * m * m);
}

}  // namespace mgcomm
