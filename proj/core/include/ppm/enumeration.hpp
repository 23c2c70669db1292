#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ppm/ancestry_graph.hpp"
#include "ppm/core.hpp"

namespace ppm {

struct Solution {
  CloneTree tree;
  std::optional<UsageMatrix> usage;        // exact mode
  std::optional<FrequencyTensor> witness;  // noisy mode
};

struct SolutionSet {
  std::vector<Solution> solutions;
  bool truncated = false;

  std::size_t size() const { return solutions.size(); }
  bool empty() const { return solutions.empty(); }
};

struct EnumerateOptions {
  /// Stop after this many emitted trees and set SolutionSet::truncated.
  std::optional<std::size_t> limit;
  /// Check state consistency and the frontier at every level and hash the
  /// search state around each recursive call. Throws Error(InvalidTree) on a
  /// violation. Slow.
  bool check_invariants = false;
  /// Skip the scaled 64-bit fast path.
  bool force_rational = false;
};

/// Exact search: every complete clone tree that is a threaded spanning tree of
/// `graph` and satisfies MSSC, in depth-first order. Each solution carries its
/// usage matrix.
SolutionSet enumerate(const AncestryGraph& graph, const FrequencyTensor& f,
                      const StateTreeSet& trees, const EnumerateOptions& options = {});

/// Builds the cladistic graph and runs enumerate.
SolutionSet enumerate(const Instance& instance, const EnumerateOptions& options = {});

struct SolutionCount {
  std::size_t count = 0;
  bool truncated = false;
};

/// Same search as enumerate without materializing trees or usage.
SolutionCount count_solutions(const AncestryGraph& graph, const FrequencyTensor& f,
                              const StateTreeSet& trees, const EnumerateOptions& options = {});

/// Smallest frequencies a tree can explain from the lower bounds. Entry
/// (p, c, i), i >= 1, is f-hat of vertex (c,i) when it is in the tree and
/// lower(p, c, i) otherwise; (p, c, 0) is 1 minus the other states.
/// Throws InconsistentTree.
FrequencyTensor compute_fhat(const CloneTree& tree, const StateTable& lower,
                             const StateTreeSet& trees);

/// True iff f-hat stays within the upper bounds on the tree's vertices, the
/// root children's cumulative f-hat is at most 1 and each character's states
/// i >= 1 sum to at most 1. On success `witness` (if given) receives
/// compute_fhat's tensor.
bool is_valid_tree(const CloneTree& tree, const FrequencyIntervalTensor& intervals,
                   const StateTreeSet& trees, FrequencyTensor* witness = nullptr);

/// Drops, until nothing changes, every vertex of a character with a missing
/// state and every vertex cut off from the root.
CloneTree state_complete(const CloneTree& tree, const std::vector<int>& state_counts);

/// Interval search: maximal valid trees, reduced to state-complete subtrees and
/// deduplicated. Each solution carries its witness tensor.
SolutionSet noisy_enumerate(const AncestryGraph& graph, const FrequencyIntervalTensor& intervals,
                            const StateTreeSet& trees, const EnumerateOptions& options = {});

SolutionSet noisy_enumerate(const IntervalInstance& instance,
                            const EnumerateOptions& options = {});

/// Sorts by edge set and removes duplicate trees, keeping the first payload.
void canonicalize(SolutionSet& set);

}  // namespace ppm
