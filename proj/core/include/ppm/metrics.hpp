#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppm/core.hpp"

namespace ppm {

/// |E(truth) ∩ E(solution)| / |E(truth)|; 1 for an edgeless truth.
Rational concordance(const CloneTree& truth, const CloneTree& solution);

struct SolutionSummary {
  std::map<Edge, std::size_t> counts;
  std::size_t total = 0;
  std::optional<CloneTree> reference;
};

/// Per-edge occurrence counts. Throws EmptySolutionSet.
SolutionSummary summarize(const std::vector<CloneTree>& solutions,
                          std::optional<CloneTree> reference = std::nullopt);

/// Union graph with counts as edge labels, reference edges drawn red.
std::string to_dot(const SolutionSummary& summary, const std::vector<std::string>& names = {});

/// Solution maximizing the sum over its edges of (count - 1); ties go to the
/// smallest edge set. Throws EmptySolutionSet.
CloneTree representative(const std::vector<CloneTree>& solutions);

/// Graphviz rendering of one tree.
std::string to_dot(const CloneTree& tree, const std::vector<std::string>& names = {});

}  // namespace ppm
