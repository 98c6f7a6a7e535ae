#include "mgcomm/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace mgcomm {

ParseError::ParseError(std::size_t line, const std::string& what)
    : GraphError("line " + std::to_string(line) + ": " + what), line_(line) {}

Graph Graph::from_directed_entries(std::size_t num_vertices, std::vector<DirectedEntry> entries) {
  if (num_vertices > std::numeric_limits<VertexId>::max())
    throw ValidationError("vertex count exceeds 32-bit id range");
  for (const auto& e : entries) {
    if (e.source >= num_vertices || e.target >= num_vertices)
      throw ValidationError("edge endpoint out of range");
    if (!(e.weight > 0) || !std::isfinite(e.weight))
      throw ValidationError("edge weights must be positive and finite");
  }
  std::sort(entries.begin(), entries.end(), [](const DirectedEntry& a, const DirectedEntry& b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  });

  Graph g;
  g.offsets_.assign(num_vertices + 1, 0);
  g.neighbors_.reserve(entries.size());
  g.weights_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size();) {
    const auto& e = entries[i];
    Weight w = 0;
    std::size_t j = i;
    for (; j < entries.size() && entries[j].source == e.source && entries[j].target == e.target; ++j)
      w += entries[j].weight;
    g.neighbors_.push_back(e.target);
    g.weights_.push_back(w);
    ++g.offsets_[e.source + 1];
    i = j;
  }
  for (std::size_t v = 0; v < num_vertices; ++v) g.offsets_[v + 1] += g.offsets_[v];
  for (Weight w : g.weights_) g.total_weight_2m_ += w;
  return g;
}

std::vector<Weight> Graph::weighted_degrees() const {
  const std::size_t n = num_vertices();
  std::vector<Weight> k(n, 0);
#pragma omp parallel for schedule(static, 2048)
  for (std::size_t v = 0; v < n; ++v) {
    Weight sum = 0;
    for (std::size_t e = offsets_[v]; e < offsets_[v + 1]; ++e) sum += weights_[e];
    k[v] = sum;
  }
  return k;
}

std::optional<Weight> Graph::edge_weight(VertexId u, VertexId v) const {
  auto row = neighbors(u);
  auto it = std::lower_bound(row.begin(), row.end(), v);
  if (it == row.end() || *it != v) return std::nullopt;
  return weights_[offsets_[u] + static_cast<std::size_t>(it - row.begin())];
}

bool Graph::check_symmetry() const {
  const std::size_t n = num_vertices();
  for (VertexId u = 0; u < n; ++u) {
    auto row = neighbors(u);
    auto ws = weights(u);
    for (std::size_t p = 0; p < row.size(); ++p) {
      if (row[p] == u) continue;
      auto back = edge_weight(row[p], u);
      if (!back || *back != ws[p]) return false;
    }
  }
  return true;
}

std::size_t Graph::memory_bytes() const noexcept {
  return offsets_.size() * sizeof(std::size_t) + neighbors_.size() * sizeof(VertexId) +
         weights_.size() * sizeof(Weight);
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool is_comment(std::string_view line) {
  for (char ch : line) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch == '#' || ch == '%';
  }
  return true;  // blank
}

// Adds an undirected contribution: both directions, so a self-loop line
// contributes twice to its single stored entry.
void push_undirected(std::vector<DirectedEntry>& entries, VertexId u, VertexId v, Weight w) {
  entries.push_back({u, v, w});
  entries.push_back({v, u, w});
}

}  // namespace

Graph load_edge_list(std::istream& in, const EdgeListOptions& options) {
  if (options.indexing_base != 0 && options.indexing_base != 1)
    throw ValidationError("indexing base must be 0 or 1");
  if (!(options.default_weight > 0)) throw ValidationError("default weight must be positive");

  std::vector<DirectedEntry> entries;
  std::uint64_t max_id = 0;
  bool any = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment(line)) continue;
    auto fields = split_fields(line);
    if (fields.size() != 2 && fields.size() != 3)
      throw ParseError(line_no, "expected 'u v' or 'u v w'");
    std::uint64_t u = 0, v = 0;
    if (!parse_number(fields[0], u) || !parse_number(fields[1], v))
      throw ParseError(line_no, "vertex ids must be non-negative integers");
    if (u < static_cast<std::uint64_t>(options.indexing_base) ||
        v < static_cast<std::uint64_t>(options.indexing_base))
      throw ParseError(line_no, "vertex id below indexing base");
    u -= options.indexing_base;
    v -= options.indexing_base;
    if (u >= std::numeric_limits<VertexId>::max() || v >= std::numeric_limits<VertexId>::max())
      throw ParseError(line_no, "vertex id exceeds 32-bit range");
    if (options.num_vertices && (u >= *options.num_vertices || v >= *options.num_vertices))
      throw ParseError(line_no, "vertex id outside declared range");
    Weight w = options.default_weight;
    if (fields.size() == 3 && !parse_number(fields[2], w))
      throw ParseError(line_no, "weight is not a number");
    if (!(w > 0) || !std::isfinite(w))
      throw ValidationError("line " + std::to_string(line_no) + ": non-positive weight");
    max_id = std::max({max_id, u, v});
    any = true;
    push_undirected(entries, static_cast<VertexId>(u), static_cast<VertexId>(v), w);
  }
  std::size_t n = options.num_vertices ? *options.num_vertices : (any ? max_id + 1 : 0);
  return Graph::from_directed_entries(n, std::move(entries));
}

Graph load_edge_list_file(const std::string& path, const EdgeListOptions& options) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  return load_edge_list(in, options);
}

Graph load_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "empty MatrixMarket input");
  ++line_no;
  std::string lowered = line;
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  auto header = split_fields(lowered);
  if (header.size() != 5 || header[0] != "%%matrixmarket" || header[1] != "matrix")
    throw ParseError(line_no, "missing %%MatrixMarket matrix header");
  if (header[2] != "coordinate") throw UnsupportedFormatError("only coordinate format is supported");
  const std::string_view field = header[3];
  if (field != "pattern" && field != "real" && field != "integer")
    throw UnsupportedFormatError("unsupported field '" + std::string(field) + "'");
  const std::string_view symmetry = header[4];
  if (symmetry != "general" && symmetry != "symmetric")
    throw UnsupportedFormatError("unsupported symmetry '" + std::string(symmetry) + "'");
  const bool pattern = field == "pattern";

  std::uint64_t rows = 0, cols = 0, nnz = 0;
  bool have_size = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment(line)) continue;
    auto fields = split_fields(line);
    if (fields.size() != 3 || !parse_number(fields[0], rows) || !parse_number(fields[1], cols) ||
        !parse_number(fields[2], nnz))
      throw ParseError(line_no, "bad size line");
    have_size = true;
    break;
  }
  if (!have_size) throw ParseError(line_no, "missing size line");
  const std::uint64_t n = std::max(rows, cols);
  if (n >= std::numeric_limits<VertexId>::max()) throw ValidationError("matrix too large");

  std::vector<DirectedEntry> entries;
  entries.reserve(2 * nnz);
  std::uint64_t seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment(line)) continue;
    auto fields = split_fields(line);
    if (fields.size() != (pattern ? 2u : 3u)) throw ParseError(line_no, "bad entry line");
    std::uint64_t r = 0, c = 0;
    if (!parse_number(fields[0], r) || !parse_number(fields[1], c) || r == 0 || c == 0 || r > rows ||
        c > cols)
      throw ParseError(line_no, "entry index out of range");
    Weight w = 1.0;
    if (!pattern && !parse_number(fields[2], w)) throw ParseError(line_no, "bad entry value");
    if (!(w > 0) || !std::isfinite(w))
      throw ValidationError("line " + std::to_string(line_no) + ": non-positive weight");
    push_undirected(entries, static_cast<VertexId>(r - 1), static_cast<VertexId>(c - 1), w);
    ++seen;
  }
  if (seen != nnz) throw ParseError(line_no, "entry count does not match size line");
  return Graph::from_directed_entries(n, std::move(entries));
}

Graph load_matrix_market_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  return load_matrix_market(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  auto old_precision = out.precision(std::numeric_limits<Weight>::max_digits10);
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    auto row = g.neighbors(u);
    auto ws = g.weights(u);
    for (std::size_t p = 0; p < row.size(); ++p) {
      if (row[p] < u) continue;
      out << u << ' ' << row[p] << ' ' << (row[p] == u ? ws[p] / 2 : ws[p]) << '\n';
    }
  }
  out.precision(old_precision);
}

Graph build_aggregate_graph(std::size_t community_count, std::span<const AggregateEdge> edges, bool exact) {
  // Canonical key (lo, hi); forward holds the lo->hi direction.
  struct PairWeight {
    VertexId lo, hi;
    Weight forward, backward;
  };
  std::vector<PairWeight> pairs;
  pairs.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.from >= community_count || e.to >= community_count)
      throw ConsistencyError("aggregate edge references unknown community");
    if (e.from <= e.to)
      pairs.push_back({e.from, e.to, e.weight, 0});
    else
      pairs.push_back({e.to, e.from, 0, e.weight});
  }
  std::sort(pairs.begin(), pairs.end(), [](const PairWeight& a, const PairWeight& b) {
    return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
  });

  std::vector<DirectedEntry> entries;
  entries.reserve(2 * pairs.size());
  for (std::size_t i = 0; i < pairs.size();) {
    PairWeight acc = pairs[i];
    std::size_t j = i + 1;
    for (; j < pairs.size() && pairs[j].lo == acc.lo && pairs[j].hi == acc.hi; ++j) {
      acc.forward += pairs[j].forward;
      acc.backward += pairs[j].backward;
    }
    i = j;
    if (acc.lo == acc.hi) {
      entries.push_back({acc.lo, acc.lo, acc.forward});
      continue;
    }
    if (exact) {
      const Weight scale = std::max(std::abs(acc.forward), std::abs(acc.backward));
      if (std::abs(acc.forward - acc.backward) > 1e-9 * scale)
        throw ConsistencyError("asymmetric aggregate weights between communities " + std::to_string(acc.lo) +
                               " and " + std::to_string(acc.hi));
    }
    const Weight w = acc.forward == acc.backward ? acc.forward : (acc.forward + acc.backward) / 2;
    entries.push_back({acc.lo, acc.hi, w});
    entries.push_back({acc.hi, acc.lo, w});
  }
  return Graph::from_directed_entries(community_count, std::move(entries));
}

}  // namespace mgcomm
