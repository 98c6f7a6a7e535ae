// mgcomm: run, compare and benchmark community detection with low-memory
// neighbor-community accumulators.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "mgcomm/graph.hpp"
#include "mgcomm/quality.hpp"
#include "mgcomm/runner.hpp"
#include "mgcomm/synthetic.hpp"

using namespace mgcomm;

namespace {

struct SpecOptions {
  std::string input, format = "auto", algorithm = "louvain", strategy = "mg", policy;
  int base = 0;
  std::optional<int> slots, scans, max_iterations, max_passes;
  std::optional<double> slots_fraction, tolerance;
  int threads = 0;
  bool deterministic = false;
  std::uint64_t seed = 0;
};

void add_spec_options(CLI::App* cmd, SpecOptions& o) {
  cmd->add_option("-i,--input", o.input, "Graph file (.mtx or edge list)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--format", o.format, "auto | mtx | edgelist");
  cmd->add_option("--base", o.base, "Vertex id base of edge lists (0 or 1)");
  cmd->add_option("-a,--algorithm", o.algorithm, "louvain | leiden | lpa");
  cmd->add_option("-t,--threads", o.threads, "Worker threads (0 = all)");
  cmd->add_flag("--deterministic", o.deterministic, "Single worker, ascending vertex order");
  cmd->add_option("--seed", o.seed, "Recorded in the report");
  cmd->add_option("--tolerance", o.tolerance, "Sweep tolerance (Louvain/Leiden) or tau (LPA)");
  cmd->add_option("--max-iterations", o.max_iterations);
  cmd->add_option("--max-passes", o.max_passes);
}

void add_strategy_options(CLI::App* cmd, SpecOptions& o) {
  cmd->add_option("-s,--strategy", o.strategy, "far_kv | small_hash | bm | mg");
  cmd->add_option("-k,--slots", o.slots, "Misra-Gries slots (default 8, Leiden 64)");
  cmd->add_option("--policy", o.policy, "conditional | unconditional (mg only)");
  cmd->add_option("--slots-fraction", o.slots_fraction, "Small hashtable size as a fraction of |V|");
  cmd->add_option("--scans", o.scans, "LPA label selection: 1 or 2");
}

RunSpec to_spec(const SpecOptions& o) {
  RunSpec s;
  s.input_path = o.input;
  s.format = parse_input_format(o.format);
  s.indexing_base = o.base;
  s.algorithm = parse_algorithm(o.algorithm);
  s.strategy = parse_strategy_kind(o.strategy);
  s.slots = o.slots;
  if (!o.policy.empty()) s.policy = parse_subtraction_policy(o.policy);
  s.slots_fraction = o.slots_fraction;
  s.scans = o.scans;
  s.threads = o.threads;
  s.deterministic = o.deterministic;
  s.seed = o.seed;
  s.iteration_tolerance = o.tolerance;
  s.max_iterations = o.max_iterations;
  s.max_passes = o.max_passes;
  return s;
}

// "mg:8", "mg:64:unconditional", "small_hash:0.001", "far_kv", "bm", "mg:8:1scan"
RunSpec parse_variant(const std::string& text, const RunSpec& base) {
  RunSpec s = base;
  s.slots.reset();
  s.policy.reset();
  s.slots_fraction.reset();
  s.scans.reset();
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.empty()) throw ConfigError("empty strategy variant");
  s.strategy = parse_strategy_kind(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto& p = parts[i];
    if (p == "conditional" || p == "unconditional")
      s.policy = parse_subtraction_policy(p);
    else if (p == "1scan" || p == "2scan")
      s.scans = p[0] - '0';
    else if (s.strategy == StrategyKind::SmallHash)
      s.slots_fraction = std::stod(p);
    else
      s.slots = std::stoi(p);
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community detection with memory-efficient neighbor-community accumulators"};
  app.require_subcommand(1);

  SpecOptions run_opts;
  std::string membership_out, report_out;
  auto* run_cmd = app.add_subcommand("run", "Detect communities and write membership + report");
  add_spec_options(run_cmd, run_opts);
  add_strategy_options(run_cmd, run_opts);
  run_cmd->add_option("-m,--membership", membership_out, "Membership output file");
  run_cmd->add_option("-r,--report", report_out, "JSON report file (default: stdout)");

  SpecOptions cmp_opts;
  std::vector<std::string> variants;
  std::size_t baseline = 0;
  double threshold = 0.99;
  std::string cmp_json;
  auto* cmp_cmd = app.add_subcommand("compare", "Run several strategies on one graph side by side");
  add_spec_options(cmp_cmd, cmp_opts);
  cmp_cmd->add_option("--variants", variants, "Strategies, e.g. far_kv mg:8 mg:8:unconditional bm small_hash:3e-4")
      ->required();
  cmp_cmd->add_option("--baseline", baseline, "Index of the baseline variant");
  cmp_cmd->add_option("--threshold", threshold, "Flag relative modularity below this");
  cmp_cmd->add_option("--json", cmp_json, "Also write the table as JSON");

  PlantedPartitionParams gen;
  std::string gen_out, truth_out;
  auto* gen_cmd = app.add_subcommand("generate", "Write an LFR-style planted-partition edge list");
  gen_cmd->add_option("-n,--vertices", gen.vertices);
  gen_cmd->add_option("--min-community", gen.min_community);
  gen_cmd->add_option("--max-community", gen.max_community);
  gen_cmd->add_option("--intra-degree", gen.intra_degree);
  gen_cmd->add_option("--inter-degree", gen.inter_degree);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("-o,--output", gen_out)->required();
  gen_cmd->add_option("--truth", truth_out, "Planted membership output");

  std::string q_input, q_format = "auto", q_membership;
  auto* q_cmd = app.add_subcommand("modularity", "Evaluate a membership file on a graph");
  q_cmd->add_option("-i,--input", q_input)->required()->check(CLI::ExistingFile);
  q_cmd->add_option("--format", q_format);
  q_cmd->add_option("-m,--membership", q_membership)->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      RunSpec spec = to_spec(run_opts);
      spec.membership_path = membership_out;
      spec.report_path = report_out;
      const auto outcome = run(spec);
      if (report_out.empty()) std::cout << outcome.report.to_json().dump(2) << '\n';
    } else if (*cmp_cmd) {
      const RunSpec base = to_spec(cmp_opts);
      std::vector<RunSpec> specs;
      for (const auto& v : variants) specs.push_back(parse_variant(v, base));
      for (const auto& s : specs) s.resolve_strategy();
      const Graph g = load_graph(base.input_path, base.format, base.indexing_base);
      const auto table = compare(g, specs, baseline, threshold);
      std::cout << table.to_text();
      if (!cmp_json.empty()) {
        std::ofstream f(cmp_json);
        f << table.to_json().dump(2) << '\n';
      }
    } else if (*gen_cmd) {
      const auto planted = generate_planted_partition(gen);
      std::ofstream f(gen_out);
      if (!f) throw std::runtime_error("cannot write " + gen_out);
      write_edge_list(f, planted.graph);
      if (!truth_out.empty()) {
        std::ofstream t(truth_out);
        write_membership(t, planted.ground_truth);
      }
      std::cerr << "wrote " << planted.graph.num_vertices() << " vertices, " << planted.graph.num_directed_edges() / 2
                << " edges\n";
    } else if (*q_cmd) {
      const Graph g = load_graph(q_input, parse_input_format(q_format));
      std::ifstream f(q_membership);
      const auto membership = read_membership(f);
      std::cout << std::setprecision(17) << modularity(g, membership) << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
