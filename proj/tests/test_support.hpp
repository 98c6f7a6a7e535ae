// Graph builders and independent oracles shared by the unit and acceptance tests.
#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mgcomm/graph.hpp"

namespace mgcomm::testing {

struct Edge {
  VertexId u, v;
  Weight w;
};

/// Undirected edges -> Graph through the public loader path, so the same
/// self-loop convention applies.
inline Graph make_graph(std::size_t n, const std::vector<Edge>& edges) {
  std::ostringstream text;
  text.precision(17);
  for (const auto& e : edges) text << e.u << ' ' << e.v << ' ' << e.w << '\n';
  std::istringstream in(text.str());
  EdgeListOptions options;
  options.num_vertices = n;
  return load_edge_list(in, options);
}

inline Graph two_triangles() {
  return make_graph(6, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {3, 4, 1}, {4, 5, 1}, {5, 3, 1}});
}

inline Graph triangle() { return make_graph(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}}); }

inline Graph path3() { return make_graph(3, {{0, 1, 1}, {1, 2, 1}}); }

inline Graph star4() { return make_graph(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}); }

/// Erdos-Renyi style graph with random weights; `integer_weights` draws from 1..5.
inline std::vector<Edge> random_edges(std::size_t n, double p, std::mt19937_64& rng, bool integer_weights,
                                      bool self_loops = false) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.1, 5.0);
  std::uniform_int_distribution<int> iweight(1, 5);
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = self_loops ? u : u + 1; v < n; ++v)
      if (unit(rng) < (u == v ? p / 4 : p))
        edges.push_back({u, v, integer_weights ? static_cast<Weight>(iweight(rng)) : weight(rng)});
  return edges;
}

inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng, bool integer_weights = true,
                          bool self_loops = false) {
  return make_graph(n, random_edges(n, p, rng, integer_weights, self_loops));
}

/// Disjoint union of cliques with the given sizes plus optional unit bridge
/// edges between consecutive cliques.
inline Graph clique_chain(const std::vector<std::size_t>& sizes, bool bridges) {
  std::vector<Edge> edges;
  std::size_t start = 0, n = 0;
  for (std::size_t s : sizes) n += s;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    for (std::size_t a = 0; a < sizes[c]; ++a)
      for (std::size_t b = a + 1; b < sizes[c]; ++b)
        edges.push_back({static_cast<VertexId>(start + a), static_cast<VertexId>(start + b), 1});
    if (bridges && c + 1 < sizes.size())
      edges.push_back({static_cast<VertexId>(start), static_cast<VertexId>(start + sizes[c]), 1});
    start += sizes[c];
  }
  return make_graph(n, edges);
}

/// Naive loader oracle: pair weights from an ordered map keyed by (min, max).
inline std::map<std::pair<VertexId, VertexId>, Weight> naive_pair_weights(const std::vector<Edge>& lines) {
  std::map<std::pair<VertexId, VertexId>, Weight> pairs;
  for (const auto& e : lines) pairs[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.w;
  return pairs;
}

/// Modularity straight from the definition over vertex pairs:
/// Q = 1/2m * sum_ij [A_ij - k_i k_j / 2m] delta(c_i, c_j).
inline double modularity_by_pairs(const Graph& g, const std::vector<VertexId>& membership) {
  const double two_m = g.total_weight_2m();
  const auto k = g.weighted_degrees();
  double q = 0;
  for (VertexId i = 0; i < g.num_vertices(); ++i)
    for (VertexId j = 0; j < g.num_vertices(); ++j) {
      if (membership[i] != membership[j]) continue;
      const double a = g.edge_weight(i, j).value_or(0);
      q += a - k[i] * k[j] / two_m;
    }
  return q / two_m;
}

/// Calls `visit` with every set partition of {0..n-1} as a restricted growth string.
inline void for_each_partition(std::size_t n, const std::function<void(const std::vector<VertexId>&)>& visit) {
  std::vector<VertexId> a(n, 0);
  std::function<void(std::size_t, VertexId)> rec = [&](std::size_t i, VertexId max_label) {
    if (i == n) {
      visit(a);
      return;
    }
    for (VertexId c = 0; c <= max_label + 1; ++c) {
      a[i] = c;
      rec(i + 1, std::max(max_label, c));
    }
  };
  if (n == 0) {
    visit(a);
    return;
  }
  rec(1, 0);
}

struct BestPartition {
  double modularity = -1;
  std::vector<VertexId> membership;
  std::size_t partitions = 0;
  std::size_t optimal_count = 0;
};

inline BestPartition exhaustive_best(const Graph& g) {
  BestPartition best;
  for_each_partition(g.num_vertices(), [&](const std::vector<VertexId>& m) {
    ++best.partitions;
    const double q = modularity_by_pairs(g, m);
    if (q > best.modularity + 1e-12) {
      best.modularity = q;
      best.membership = m;
      best.optimal_count = 1;
    } else if (std::abs(q - best.modularity) <= 1e-12) {
      ++best.optimal_count;
    }
  });
  return best;
}

/// Canonical relabeling (first appearance order) so partitions compare by value.
inline std::vector<VertexId> canonical(std::vector<VertexId> m) {
  std::map<VertexId, VertexId> remap;
  for (auto& c : m) {
    auto [it, inserted] = remap.try_emplace(c, static_cast<VertexId>(remap.size()));
    c = it->second;
  }
  return m;
}

/// True when every community's induced subgraph is connected (BFS per community).
inline bool communities_connected(const Graph& g, const std::vector<VertexId>& membership) {
  const std::size_t n = g.num_vertices();
  std::vector<char> seen(n, 0);
  std::map<VertexId, int> components;
  for (VertexId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    if (++components[membership[s]] > 1) return false;
    std::queue<VertexId> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      const VertexId u = q.front();
      q.pop();
      for (VertexId v : g.neighbors(u))
        if (!seen[v] && membership[v] == membership[s]) {
          seen[v] = 1;
          q.push(v);
        }
    }
  }
  return true;
}

}  // namespace mgcomm::testing
