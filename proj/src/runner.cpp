#include "mgcomm/runner.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "mgcomm/leiden.hpp"
#include "mgcomm/lpa.hpp"
#include "mgcomm/quality.hpp"

namespace mgcomm {

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Louvain: return "louvain";
    case Algorithm::Leiden: return "leiden";
    case Algorithm::Lpa: return "lpa";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "louvain") return Algorithm::Louvain;
  if (name == "leiden") return Algorithm::Leiden;
  if (name == "lpa") return Algorithm::Lpa;
  throw ConfigError("unknown algorithm '" + name + "'");
}

InputFormat parse_input_format(const std::string& name) {
  if (name == "auto") return InputFormat::Auto;
  if (name == "mtx" || name == "matrix-market") return InputFormat::MatrixMarket;
  if (name == "edgelist" || name == "edge-list") return InputFormat::EdgeList;
  throw ConfigError("unknown input format '" + name + "'");
}

AccumulatorStrategy RunSpec::resolve_strategy() const {
  AccumulatorStrategy s;
  s.kind = strategy;
  if (strategy != StrategyKind::MisraGries) {
    if (slots) throw ConfigError("slot count only applies to the misra_gries strategy");
    if (policy) throw ConfigError("subtraction policy only applies to the misra_gries strategy");
  }
  if (strategy != StrategyKind::SmallHash && slots_fraction)
    throw ConfigError("slots fraction only applies to the small_hash strategy");
  if (algorithm != Algorithm::Lpa && scans) throw ConfigError("scans only apply to lpa");
  if (scans && *scans != 1 && *scans != 2) throw ConfigError("scans must be 1 or 2");
  switch (strategy) {
    case StrategyKind::MisraGries:
      s.slots = slots.value_or(algorithm == Algorithm::Leiden ? 64 : 8);
      s.policy = policy.value_or(SubtractionPolicy::Conditional);
      break;
    case StrategyKind::SmallHash: s.slots_fraction = slots_fraction.value_or(kDefaultSlotsFraction); break;
    case StrategyKind::BoyerMoore: s.slots = 1; break;
    case StrategyKind::FarKV: break;
  }
  s.validate();
  return s;
}

std::string RunSpec::label() const {
  std::string l = to_string(algorithm) + "/" + resolve_strategy().label();
  if (algorithm == Algorithm::Lpa && scans.value_or(2) == 1) l += "/1scan";
  return l;
}

nlohmann::ordered_json DetectionReport::to_json() const {
  nlohmann::ordered_json j;
  j["algorithm"] = algorithm;
  j["strategy"] = strategy;
  j["parameters"] = parameters;
  j["modularity"] = modularity;
  j["community_count"] = community_count;
  j["passes"] = passes;
  j["iterations_per_pass"] = iterations_per_pass;
  j["vertices_moved_per_pass"] = vertices_moved_per_pass;
  j["phase_time_ms"] = phase_time_ms;
  j["total_time_ms"] = total_time_ms;
  j["aux_memory_bytes"] = aux_memory_bytes;
  j["workers"] = workers;
  j["graph_bytes"] = graph_bytes;
  j["vertices"] = vertices;
  j["directed_edges"] = directed_edges;
  return j;
}

Graph load_graph(const std::string& path, InputFormat format, int indexing_base) {
  if (format == InputFormat::Auto) {
    const bool mtx = path.size() >= 4 && path.compare(path.size() - 4, 4, ".mtx") == 0;
    format = mtx ? InputFormat::MatrixMarket : InputFormat::EdgeList;
  }
  if (format == InputFormat::MatrixMarket) return load_matrix_market_file(path);
  EdgeListOptions options;
  options.indexing_base = indexing_base;
  return load_edge_list_file(path, options);
}

RunOutcome run(const Graph& g, const RunSpec& spec) {
  const AccumulatorStrategy strategy = spec.resolve_strategy();
  DetectionResult result;
  nlohmann::ordered_json params;
  params["kind"] = to_string(strategy.kind);
  if (strategy.kind == StrategyKind::MisraGries) {
    params["slots"] = strategy.slots;
    params["subtraction_policy"] = to_string(strategy.policy);
  }
  if (strategy.kind == StrategyKind::SmallHash) {
    params["slots_fraction"] = strategy.slots_fraction;
    params["hash_slots"] = strategy.small_hash_slots(g.num_vertices());
  }
  params["deterministic"] = spec.deterministic;
  params["threads"] = spec.threads;
  params["seed"] = spec.seed;

  const auto t0 = std::chrono::steady_clock::now();
  if (spec.algorithm == Algorithm::Lpa) {
    LpaConfig c;
    c.strategy = strategy;
    c.scans = spec.scans.value_or(2);
    c.deterministic = spec.deterministic;
    c.threads = spec.threads;
    c.seed = spec.seed;
    if (spec.iteration_tolerance) c.tolerance = *spec.iteration_tolerance;
    if (spec.max_iterations) c.max_iterations = *spec.max_iterations;
    params["scans"] = c.scans;
    params["tolerance"] = c.tolerance;
    params["max_iterations"] = c.max_iterations;
    result = detect_lpa(g, c).detection;
  } else {
    LouvainConfig c = spec.algorithm == Algorithm::Leiden ? default_leiden_config() : default_louvain_config();
    c.strategy = strategy;
    c.deterministic = spec.deterministic;
    c.threads = spec.threads;
    c.seed = spec.seed;
    if (spec.iteration_tolerance) c.iteration_tolerance = *spec.iteration_tolerance;
    if (spec.max_iterations) c.max_iterations = *spec.max_iterations;
    if (spec.max_passes) c.max_passes = *spec.max_passes;
    params["aggregation_strategy"] = strategy.for_aggregation().label();
    params["iteration_tolerance"] = c.iteration_tolerance;
    params["tolerance_decline_factor"] = c.tolerance_decline_factor;
    params["max_iterations"] = c.max_iterations;
    params["max_passes"] = c.max_passes;
    params["aggregation_stop_ratio"] = c.aggregation_stop_ratio;
    result = spec.algorithm == Algorithm::Leiden ? detect_leiden(g, c) : detect_louvain(g, c);
  }
  const double total_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  RunOutcome out;
  auto& r = out.report;
  r.algorithm = to_string(spec.algorithm);
  r.strategy = strategy.label();
  r.parameters = std::move(params);
  r.modularity = modularity(g, result.assignment);
  r.community_count = result.assignment.community_count;
  r.passes = result.trace.size();
  double lm = 0, refine = 0, agg = 0;
  for (const auto& p : result.trace) {
    r.iterations_per_pass.push_back(p.iterations);
    r.vertices_moved_per_pass.push_back(p.vertices_moved);
    lm += p.local_moving_ms;
    refine += p.refinement_ms;
    agg += p.aggregation_ms;
  }
  r.phase_time_ms["local_moving"] = lm;
  if (spec.algorithm == Algorithm::Leiden) r.phase_time_ms["refinement"] = refine;
  if (spec.algorithm != Algorithm::Lpa) r.phase_time_ms["aggregation"] = agg;
  r.phase_time_ms["other"] = std::max(0.0, total_ms - lm - refine - agg);
  r.total_time_ms = total_ms;
  r.aux_memory_bytes = result.aux_memory_bytes();
  r.workers = result.workers;
  r.graph_bytes = g.memory_bytes();
  r.vertices = g.num_vertices();
  r.directed_edges = g.num_directed_edges();
  out.membership = std::move(result.assignment.membership);
  return out;
}

RunOutcome run(const RunSpec& spec) {
  spec.resolve_strategy();
  const Graph g = load_graph(spec.input_path, spec.format, spec.indexing_base);
  RunOutcome out = run(g, spec);
  if (!spec.membership_path.empty()) {
    std::ofstream f(spec.membership_path);
    if (!f) throw std::runtime_error("cannot write " + spec.membership_path);
    write_membership(f, out.membership);
  }
  if (!spec.report_path.empty()) {
    std::ofstream f(spec.report_path);
    if (!f) throw std::runtime_error("cannot write " + spec.report_path);
    f << out.report.to_json().dump(2) << '\n';
  }
  return out;
}

void write_membership(std::ostream& out, std::span<const VertexId> membership) {
  for (std::size_t v = 0; v < membership.size(); ++v) out << v << ' ' << membership[v] << '\n';
}

std::vector<VertexId> read_membership(std::istream& in) {
  std::vector<VertexId> membership;
  std::uint64_t v = 0, c = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    if (!(fields >> v >> c) || v != membership.size()) throw ParseError(line_no, "expected 'vertex community' in vertex order");
    membership.push_back(static_cast<VertexId>(c));
  }
  return membership;
}

nlohmann::ordered_json ComparisonTable::to_json() const {
  nlohmann::ordered_json j;
  j["baseline_index"] = baseline_index;
  j["threshold"] = threshold;
  auto& rows_json = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"label", r.label},
                         {"modularity", r.modularity},
                         {"relative_modularity", r.relative_modularity},
                         {"runtime_ms", r.runtime_ms},
                         {"relative_runtime", r.relative_runtime},
                         {"aux_memory_bytes", r.aux_memory_bytes},
                         {"community_count", r.community_count},
                         {"below_threshold", r.below_threshold}});
  }
  return j;
}

std::string ComparisonTable::to_text() const {
  std::ostringstream os;
  os << std::left << std::setw(28) << "run" << std::right << std::setw(12) << "modularity" << std::setw(10) << "rel_Q"
     << std::setw(12) << "time_ms" << std::setw(10) << "rel_time" << std::setw(14) << "aux_bytes" << std::setw(12)
     << "communities" << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    os << std::left << std::setw(28) << (r.label + (i == baseline_index ? " *" : "")) << std::right << std::fixed
       << std::setprecision(6) << std::setw(12) << r.modularity << std::setprecision(4) << std::setw(10)
       << r.relative_modularity << std::setprecision(1) << std::setw(12) << r.runtime_ms << std::setprecision(3)
       << std::setw(10) << r.relative_runtime << std::setw(14) << r.aux_memory_bytes << std::setw(12)
       << r.community_count << (r.below_threshold ? "  below threshold" : "") << "\n";
  }
  return os.str();
}

ComparisonTable compare(const Graph& g, const std::vector<RunSpec>& specs, std::size_t baseline_index,
                        double threshold) {
  if (baseline_index >= specs.size()) throw ConfigError("baseline index out of range");
  ComparisonTable table;
  table.baseline_index = baseline_index;
  table.threshold = threshold;
  for (const auto& spec : specs) {
    const auto outcome = run(g, spec);
    ComparisonRow row;
    row.label = spec.label();
    row.modularity = outcome.report.modularity;
    row.runtime_ms = outcome.report.total_time_ms;
    row.aux_memory_bytes = outcome.report.aux_memory_bytes;
    row.community_count = outcome.report.community_count;
    table.rows.push_back(row);
  }
  const auto& base = table.rows[baseline_index];
  const double base_q = base.modularity, base_t = base.runtime_ms;
  for (auto& row : table.rows) {
    row.relative_modularity = row.modularity / base_q;
    row.relative_runtime = base_t > 0 ? row.runtime_ms / base_t : 1.0;
    row.below_threshold = row.relative_modularity < threshold;
  }
  return table;
}

}  // namespace mgcomm
