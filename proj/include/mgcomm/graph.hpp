#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgcomm {

using VertexId = std::uint32_t;
using Weight = double;

inline constexpr VertexId kNoVertex = static_cast<VertexId>(-1);

/// Base class for everything that can go wrong while ingesting or building a graph.
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based.
class ParseError : public GraphError {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a graph invariant (e.g. a non-positive weight).
class ValidationError : public GraphError {
 public:
  using GraphError::GraphError;
};

/// MatrixMarket variants we do not read (complex fields, dense arrays, ...).
class UnsupportedFormatError : public GraphError {
 public:
  using GraphError::GraphError;
};

/// Internal inconsistency detected while assembling a graph (e.g. asymmetric
/// exact aggregation output).
class ConsistencyError : public GraphError {
 public:
  using GraphError::GraphError;
};

/// One stored adjacency entry u -> v.
struct DirectedEntry {
  VertexId source;
  VertexId target;
  Weight weight;
};

/**
 * Undirected weighted graph in compressed adjacency (CSR) form.
 *
 * Every undirected edge {u, v} with u != v is stored twice, once per
 * direction, with the same weight. A self-loop is stored once and its stored
 * weight already carries both endpoints, so `total_weight_2m()` and the
 * weighted degrees are plain sums over stored entries. Neighbors are sorted by
 * id within each row. Immutable after construction.
 */
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from directed entries. Entries are sorted, duplicates of
  /// the same (source, target) are merged by summation. The caller is
  /// responsible for emitting both directions; `check_symmetry()` verifies it.
  static Graph from_directed_entries(std::size_t num_vertices, std::vector<DirectedEntry> entries);

  std::size_t num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_directed_edges() const noexcept { return neighbors_.size(); }
  Weight total_weight_2m() const noexcept { return total_weight_2m_; }

  std::span<const std::size_t> offsets() const noexcept { return offsets_; }
  std::span<const VertexId> neighbor_ids() const noexcept { return neighbors_; }
  std::span<const Weight> edge_weights() const noexcept { return weights_; }

  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::span<const Weight> weights(VertexId v) const noexcept {
    return {weights_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(VertexId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  /// K_i for every vertex: sum of the stored weights in its row.
  std::vector<Weight> weighted_degrees() const;

  /// Stored weight of entry (u, v), if present. Binary search over the row.
  std::optional<Weight> edge_weight(VertexId u, VertexId v) const;

  /// True when every off-diagonal entry has a reverse entry with equal weight.
  bool check_symmetry() const;

  /// Resident bytes of the adjacency arrays.
  std::size_t memory_bytes() const noexcept;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> neighbors_;
  std::vector<Weight> weights_;
  Weight total_weight_2m_ = 0;
};

struct EdgeListOptions {
  int indexing_base = 0;
  Weight default_weight = 1.0;
  /// When set, vertices are 0..n-1 and ids beyond that are a parse error.
  std::optional<std::size_t> num_vertices;
};

/// Reads whitespace separated "u v [w]" lines; '#' and '%' start comment lines.
/// Each line adds w to the undirected pair {u, v} (both directions), so
/// repeated or reversed lines merge by summation.
Graph load_edge_list(std::istream& in, const EdgeListOptions& options = {});
Graph load_edge_list_file(const std::string& path, const EdgeListOptions& options = {});

/// Reads a MatrixMarket coordinate file (pattern/real/integer, general/symmetric).
Graph load_matrix_market(std::istream& in);
Graph load_matrix_market_file(const std::string& path);

/// Writes the graph as a 0-based "u v w" edge list, one line per undirected
/// edge (u <= v). Self-loop lines carry half the stored weight so that reading
/// the file back reproduces the graph.
void write_edge_list(std::ostream& out, const Graph& g);

/// One row of aggregation output: community `from` links to community `to`.
struct AggregateEdge {
  VertexId from;
  VertexId to;
  Weight weight;
};

/**
 * Builds the super-vertex graph with one vertex per community.
 *
 * `edges` must hold, for each community c, the weights it accumulated towards
 * every community d (d == c gives the intra-community self-loop). Cross entries
 * (c, d) and (d, c) are reconciled into one symmetric weight: when `exact` is
 * set they must agree to 1e-9 relative or a ConsistencyError is thrown;
 * otherwise (sketch output) the two directions are averaged, a missing
 * direction counting as 0.
 */
Graph build_aggregate_graph(std::size_t community_count, std::span<const AggregateEdge> edges, bool exact);

}  // namespace mgcomm
