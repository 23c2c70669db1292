#pragma once

#include "ppm/core.hpp"

namespace ppm {

/// Eq. (1): u[p][v] = f+(D_v) - sum over children w of f+(D_w), root f+ = 1.
/// Columns follow tree.vertices(). Negative entries are returned as is.
/// Throws InconsistentTree if the tree does not fit the state trees.
UsageMatrix compute_usage(const FrequencyTensor& f, const CloneTree& tree,
                          const StateTreeSet& trees);

/// True iff every entry of compute_usage is nonnegative.
bool generates(const FrequencyTensor& f, const CloneTree& tree, const StateTreeSet& trees);

/// f[p][c][i] = usage mass of the vertices whose state vector has state i at
/// character c. Throws InvalidUsage on negative entries, bad row sums or
/// columns that do not match the tree.
FrequencyTensor mix(const CloneTree& tree, const UsageMatrix& usage,
                    const std::vector<int>& state_counts);

}  // namespace ppm
