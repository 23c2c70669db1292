#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ppm/ancestry_graph.hpp"
#include "ppm/io.hpp"
#include "ppm/metrics.hpp"
#include "ppm/pipeline.hpp"
#include "ppm/simulator.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kInternal = 3 };

struct SimulateArgs {
  int n = 0;
  int m = 0;
  std::optional<double> coverage;
  std::uint64_t seed = 0;
  double confidence = 0.95;
  std::vector<int> trees;
  std::string out_dir;
};

struct EnumerateArgs {
  std::string input;
  std::string mode = "exact";
  std::optional<std::size_t> max_solutions;
  bool largest_only = false;
  std::string out_dir;
  int jobs = 0;
  bool graph_dot = false;
};

struct EvaluateArgs {
  std::string truth;
  std::string solutions;
  std::string out_dir;
};

void make_dir(const std::string& path) {
  std::error_code ec;
  fs::create_directories(path, ec);
  if (ec) throw ppm::Error(ppm::ErrorKind::InvalidConfig, "cannot create " + path + ": " + ec.message());
}

int cmd_simulate(const SimulateArgs& a) {
  ppm::SimulationConfig cfg;
  cfg.n = a.n;
  cfg.m = a.m;
  cfg.coverage = a.coverage;
  cfg.seed = a.seed;
  cfg.confidence = a.confidence;
  if (!a.trees.empty()) cfg.forced_trees = a.trees;
  const ppm::SimulatedInstance sim = ppm::simulate_instance(cfg);
  make_dir(a.out_dir);

  ppm::Truth truth;
  truth.names = sim.names;
  truth.tree_ids = sim.tree_ids;
  truth.tree = sim.global_tree();
  {
    const auto columns = truth.tree.vertices();
    ppm::UsageMatrix usage(cfg.m, columns);
    for (int p = 0; p < cfg.m; ++p) {
      for (const auto v : sim.tree.vertices()) {
        const auto g = v.is_root() ? v
                                   : ppm::CharStatePair::of(
                                         v.character, ppm::catalog()[sim.tree_ids[v.character]].states[v.state]);
        usage(p, usage.column(g)) = sim.usage.at(p, v);
      }
    }
    truth.usage = std::move(usage);
  }
  ppm::write_file(a.out_dir + "/truth.json", ppm::write_truth_json(truth));

  ppm::MeasurementTable table;
  for (int p = 0; p < cfg.m; ++p) table.samples.push_back("s" + std::to_string(p));
  table.loci = sim.measurements;
  ppm::write_file(a.out_dir + "/measurements.tsv", ppm::write_measurements_tsv(table));

  if (!cfg.coverage) {
    ppm::TensorDocument doc;
    doc.names = sim.names;
    doc.state_trees = sim.state_trees;
    doc.frequencies = sim.frequencies;
    for (int t : sim.tree_ids) doc.state_labels.push_back(ppm::catalog()[t].states);
    ppm::write_file(a.out_dir + "/tensor.json", ppm::write_tensor_json(doc));
  }
  std::cout << "simulated n=" << cfg.n << " m=" << cfg.m << " seed=" << cfg.seed << " -> " << a.out_dir << "\n";
  return kOk;
}

bool looks_like_json(const std::string& path, const std::string& text) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return true;
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text[pos] == '{';
}

std::string solution_name(std::size_t index) {
  std::string digits = std::to_string(index);
  return std::string(digits.size() < 6 ? 6 - digits.size() : 0, '0') + digits;
}

int cmd_enumerate(const EnumerateArgs& a) {
  ppm::PipelineOptions options;
  options.mode = a.mode == "noisy" ? ppm::Mode::Noisy : ppm::Mode::Exact;
  options.max_solutions = a.max_solutions;
  options.largest_only = a.largest_only;
  options.jobs = a.jobs;

  const std::string text = ppm::read_file(a.input);
  ppm::PipelineResult result;
  if (looks_like_json(a.input, text)) {
    result = ppm::run_tensor(ppm::parse_tensor_json(text), options);
  } else {
    result = ppm::run_measurements(ppm::parse_measurements_tsv(text), options);
  }
  for (int c : result.dropped) {
    std::cerr << "warning: locus " << result.names[c] << " fits no catalog state tree; dropped\n";
  }

  const ppm::SolutionDocument& doc = result.document;
  make_dir(a.out_dir);
  make_dir(a.out_dir + "/combinations");
  ppm::write_file(a.out_dir + "/solutions.json", ppm::write_solutions_json(doc));
  for (const auto& comb : doc.combinations) {
    ppm::SolutionDocument part;
    part.mode = doc.mode;
    part.names = doc.names;
    part.truncated = comb.truncated;
    part.combinations.push_back(comb);
    for (const auto& s : doc.solutions) {
      if (s.combination == comb.id) part.solutions.push_back(s);
    }
    ppm::write_file(a.out_dir + "/combinations/" + comb.id + ".json", ppm::write_solutions_json(part));
  }

  std::vector<ppm::CloneTree> trees;
  for (const auto& s : doc.solutions) trees.push_back(s.tree);
  if (trees.empty()) {
    ppm::write_file(a.out_dir + "/summary.dot", "digraph solutions {\n  label=\"0 solutions\";\n}\n");
  } else {
    ppm::write_file(a.out_dir + "/summary.dot", ppm::to_dot(ppm::summarize(trees), doc.names));
  }

  if (options.mode == ppm::Mode::Exact) {
    make_dir(a.out_dir + "/usage");
    for (std::size_t k = 0; k < doc.solutions.size(); ++k) {
      const auto& s = doc.solutions[k];
      if (!s.usage) continue;
      ppm::write_file(a.out_dir + "/usage/" + solution_name(k) + ".tsv", ppm::write_usage_tsv(*s.usage, doc.names));
    }
  }
  if (a.graph_dot) {
    make_dir(a.out_dir + "/graphs");
    for (const auto& run : result.runs) {
      ppm::write_file(a.out_dir + "/graphs/" + run.combination.id() + ".dot",
                      ppm::to_dot(run.graph, run.combination.names));
    }
  }
  std::cout << doc.solutions.size() << " solutions over " << doc.combinations.size() << " combinations"
            << (doc.truncated ? " (truncated)" : "") << "\n";
  return kOk;
}

int cmd_evaluate(const EvaluateArgs& a) {
  const ppm::Truth truth = ppm::parse_truth_json(ppm::read_file(a.truth));
  const ppm::SolutionDocument doc = ppm::parse_solutions_json(ppm::read_file(a.solutions));
  make_dir(a.out_dir);
  std::string report;
  if (truth.names != doc.names) {
    std::cerr << "warning: truth and solutions name different loci; missing vertices count as unrecovered\n";
    report += "warning: mismatched loci between truth and solutions\n";
  }

  std::string table = "solution\tcombination\tconcordance\n";
  ppm::Rational best = 0;
  std::vector<ppm::CloneTree> trees;
  for (std::size_t k = 0; k < doc.solutions.size(); ++k) {
    const auto& s = doc.solutions[k];
    const ppm::Rational c = ppm::concordance(truth.tree, s.tree);
    best = std::max(best, c);
    table += std::to_string(k) + "\t" + s.combination + "\t" + ppm::to_text(c) + "\n";
    trees.push_back(s.tree);
  }
  ppm::write_file(a.out_dir + "/concordance.tsv", table);

  report += "solutions\t" + std::to_string(doc.solutions.size()) + "\n";
  if (trees.empty()) {
    report += "0 solutions\n";
    ppm::write_file(a.out_dir + "/summary.dot", "digraph solutions {\n  label=\"0 solutions\";\n}\n");
  } else {
    report += "max_concordance\t" + ppm::to_text(best) + "\n";
    ppm::write_file(a.out_dir + "/summary.dot", ppm::to_dot(ppm::summarize(trees, truth.tree), doc.names));
    const ppm::CloneTree rep = ppm::representative(trees);
    ppm::Truth rep_doc;
    rep_doc.names = doc.names;
    rep_doc.tree = rep;
    ppm::write_file(a.out_dir + "/representative.json", ppm::write_truth_json(rep_doc));
    report += "representative_concordance\t" + ppm::to_text(ppm::concordance(truth.tree, rep)) + "\n";
  }
  if (doc.truncated) report += "truncated\ttrue\n";
  ppm::write_file(a.out_dir + "/report.tsv", report);
  std::cout << report;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perfect phylogeny mixture enumeration"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate a ground-truth instance");
  simulate->add_option("--n", sim.n, "Characters")->required();
  simulate->add_option("--m", sim.m, "Samples")->required();
  simulate->add_option("--coverage", sim.coverage, "Expected reads per locus (omit for error-free data)");
  simulate->add_option("--seed", sim.seed, "RNG seed");
  simulate->add_option("--confidence", sim.confidence, "VAF interval level");
  simulate->add_option("--trees", sim.trees, "Catalog tree per character");
  simulate->add_option("--out-dir", sim.out_dir, "Output directory")->required();

  EnumerateArgs en;
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate solution trees");
  enumerate->add_option("--input", en.input, "Measurement TSV or tensor JSON")->required();
  enumerate->add_option("--mode", en.mode, "exact or noisy")->check(CLI::IsMember({"exact", "noisy"}));
  enumerate->add_option("--max-solutions", en.max_solutions, "Stop after this many trees");
  enumerate->add_flag("--largest-only", en.largest_only, "Keep only the largest trees");
  enumerate->add_option("--out-dir", en.out_dir, "Output directory")->required();
  enumerate->add_option("--jobs", en.jobs, "Worker threads (default: PPM_JOBS or all cores)");
  enumerate->add_flag("--graph-dot", en.graph_dot, "Also write the ancestry graphs");

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "Score solutions against a ground truth");
  evaluate->add_option("--truth", ev.truth, "Ground-truth JSON")->required();
  evaluate->add_option("--solutions", ev.solutions, "Solutions JSON")->required();
  evaluate->add_option("--out-dir", ev.out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*simulate) return cmd_simulate(sim);
    if (*enumerate) return cmd_enumerate(en);
    if (*evaluate) return cmd_evaluate(ev);
  } catch (const ppm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ppm::ErrorKind::InvalidConfig:
        return kUsage;
      case ppm::ErrorKind::Parse:
      case ppm::ErrorKind::NegativeEntry:
      case ppm::ErrorKind::RowSumMismatch:
      case ppm::ErrorKind::ShapeMismatch:
      case ppm::ErrorKind::InvalidStateTree:
      case ppm::ErrorKind::InvalidInterval:
      case ppm::ErrorKind::InvalidTree:
        return kParse;
      default:
        return kInternal;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
