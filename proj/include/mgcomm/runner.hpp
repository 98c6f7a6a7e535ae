#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mgcomm/accumulator.hpp"
#include "mgcomm/graph.hpp"
#include "mgcomm/louvain.hpp"

namespace mgcomm {

enum class Algorithm { Louvain, Leiden, Lpa };
enum class InputFormat { Auto, MatrixMarket, EdgeList };

std::string to_string(Algorithm algorithm);
Algorithm parse_algorithm(const std::string& name);
InputFormat parse_input_format(const std::string& name);

/// Everything needed to reproduce one detection run. Strategy parameters are
/// optional so that a parameter given for a strategy it does not apply to can
/// be rejected instead of silently ignored.
struct RunSpec {
  std::string input_path;
  InputFormat format = InputFormat::Auto;
  int indexing_base = 0;

  Algorithm algorithm = Algorithm::Louvain;
  StrategyKind strategy = StrategyKind::MisraGries;
  std::optional<int> slots;
  std::optional<SubtractionPolicy> policy;
  std::optional<double> slots_fraction;
  std::optional<int> scans;  // LPA only

  int threads = 0;
  bool deterministic = false;
  std::uint64_t seed = 0;
  std::optional<double> iteration_tolerance;  // Louvain/Leiden sweep tolerance, or LPA tau
  std::optional<int> max_iterations;
  std::optional<int> max_passes;

  std::string membership_path;
  std::string report_path;

  /// Checks parameter applicability and returns the strategy with defaults
  /// filled in (k = 8 for Louvain and LPA, 64 for Leiden). Throws ConfigError.
  AccumulatorStrategy resolve_strategy() const;
  /// Short label for tables, e.g. "louvain/mg8".
  std::string label() const;
};

struct DetectionReport {
  std::string algorithm;
  std::string strategy;
  nlohmann::ordered_json parameters;
  double modularity = 0;
  std::size_t community_count = 0;
  std::size_t passes = 0;
  std::vector<int> iterations_per_pass;
  std::vector<std::size_t> vertices_moved_per_pass;
  nlohmann::ordered_json phase_time_ms;
  double total_time_ms = 0;
  std::size_t aux_memory_bytes = 0;
  int workers = 1;
  std::size_t graph_bytes = 0;
  std::size_t vertices = 0;
  std::size_t directed_edges = 0;

  nlohmann::ordered_json to_json() const;
};

struct RunOutcome {
  DetectionReport report;
  std::vector<VertexId> membership;
};

Graph load_graph(const std::string& path, InputFormat format, int indexing_base = 0);

/// Runs `spec` on an already loaded graph. Throws QualityUndefinedError when 2m = 0.
RunOutcome run(const Graph& g, const RunSpec& spec);
/// Loads the input, runs, and writes the membership and report files named in `spec`.
RunOutcome run(const RunSpec& spec);

/// "vertex community" per line, ascending vertex order.
void write_membership(std::ostream& out, std::span<const VertexId> membership);
std::vector<VertexId> read_membership(std::istream& in);

struct ComparisonRow {
  std::string label;
  double modularity = 0;
  double relative_modularity = 1;
  double runtime_ms = 0;
  double relative_runtime = 1;
  std::size_t aux_memory_bytes = 0;
  std::size_t community_count = 0;
  bool below_threshold = false;
};

struct ComparisonTable {
  std::size_t baseline_index = 0;
  double threshold = 0.99;
  std::vector<ComparisonRow> rows;

  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

/// Runs every spec on `g` and reports quality, runtime and memory relative to
/// `specs[baseline_index]`. Rows with relative modularity below `threshold`
/// are flagged.
ComparisonTable compare(const Graph& g, const std::vector<RunSpec>& specs, std::size_t baseline_index,
                        double threshold = 0.99);

}  // namespace mgcomm
