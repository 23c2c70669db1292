#include "ppm/metrics.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ppm {

namespace {

std::string label(CharStatePair v, const std::vector<std::string>& names) {
  if (v.is_root()) return "root";
  const std::string c = v.character < static_cast<int>(names.size()) ? names[v.character]
                                                                     : std::to_string(v.character);
  return c + ":" + std::to_string(v.state);
}

std::string node_id(CharStatePair v) {
  if (v.is_root()) return "root";
  return "v" + std::to_string(v.character) + "_" + std::to_string(v.state);
}

void write_nodes(std::ostringstream& out, const std::set<CharStatePair>& vertices,
                 const std::vector<std::string>& names) {
  for (const auto v : vertices) {
    out << "  " << node_id(v) << " [label=\"" << label(v, names) << "\"];\n";
  }
}

}  // namespace

Rational concordance(const CloneTree& truth, const CloneTree& solution) {
  if (truth.edges().empty()) return 1;
  std::size_t shared = 0;
  for (const auto& e : truth.edges()) {
    if (solution.has_edge(e)) ++shared;
  }
  return make_rational(static_cast<long long>(shared), static_cast<long long>(truth.edges().size()));
}

SolutionSummary summarize(const std::vector<CloneTree>& solutions, std::optional<CloneTree> reference) {
  if (solutions.empty()) throw Error(ErrorKind::EmptySolutionSet, "no solutions to summarize");
  SolutionSummary summary;
  summary.total = solutions.size();
  summary.reference = std::move(reference);
  for (const auto& tree : solutions) {
    for (const auto& e : tree.edges()) ++summary.counts[e];
  }
  return summary;
}

std::string to_dot(const SolutionSummary& summary, const std::vector<std::string>& names) {
  std::set<CharStatePair> vertices{CharStatePair::root()};
  for (const auto& [e, count] : summary.counts) {
    vertices.insert(e.parent);
    vertices.insert(e.child);
  }
  if (summary.reference) {
    for (const auto& e : summary.reference->edges()) {
      vertices.insert(e.parent);
      vertices.insert(e.child);
    }
  }
  std::ostringstream out;
  out << "digraph solutions {\n";
  out << "  label=\"" << summary.total << " solutions\";\n";
  write_nodes(out, vertices, names);
  for (const auto& [e, count] : summary.counts) {
    out << "  " << node_id(e.parent) << " -> " << node_id(e.child) << " [label=\"" << count << "\"";
    if (summary.reference && summary.reference->has_edge(e)) out << ", color=red";
    out << "];\n";
  }
  if (summary.reference) {
    for (const auto& e : summary.reference->edges()) {
      if (summary.counts.contains(e)) continue;
      out << "  " << node_id(e.parent) << " -> " << node_id(e.child)
          << " [label=\"0\", color=red, style=dashed];\n";
    }
  }
  out << "}\n";
  return out.str();
}

CloneTree representative(const std::vector<CloneTree>& solutions) {
  if (solutions.empty()) throw Error(ErrorKind::EmptySolutionSet, "no solutions to pick from");
  const SolutionSummary summary = summarize(solutions);
  const CloneTree* best = nullptr;
  std::size_t best_score = 0;
  for (const auto& tree : solutions) {
    std::size_t score = 0;
    for (const auto& e : tree.edges()) score += summary.counts.at(e) - 1;
    if (!best || score > best_score || (score == best_score && tree < *best)) {
      best = &tree;
      best_score = score;
    }
  }
  return *best;
}

std::string to_dot(const CloneTree& tree, const std::vector<std::string>& names) {
  const auto all = tree.vertices();
  std::ostringstream out;
  out << "digraph tree {\n";
  write_nodes(out, std::set<CharStatePair>(all.begin(), all.end()), names);
  for (const auto& e : tree.edges()) {
    out << "  " << node_id(e.parent) << " -> " << node_id(e.child) << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace ppm
