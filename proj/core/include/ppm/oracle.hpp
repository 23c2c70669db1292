#pragma once

#include <cstdint>
#include <vector>

#include "ppm/core.hpp"
#include "ppm/enumeration.hpp"

namespace ppm {

struct BruteForceOptions {
  /// Cap on N^(N-2), the number of labelled trees on N vertices.
  double max_candidates = 1e7;
};

/// Every complete clone tree consistent with the state trees that generates
/// f, found by trying all parent assignments. Sorted by edge set, each with
/// its usage. Throws InstanceTooLarge above the cap.
SolutionSet brute_enumerate(const FrequencyTensor& f, const StateTreeSet& trees,
                            const BruteForceOptions& options = {});

/// Two samples, two states, |b| + 2 characters: "d", "e-d", then b in
/// ascending order. Throws PreconditionViolated unless b is a nonempty set of
/// distinct positive values below d and d < sum b.
Instance subset_sum_instance(std::vector<std::int64_t> b, std::int64_t d);

/// Independent feasibility check: some subset of b sums to d.
bool subset_sum_feasible(const std::vector<std::int64_t>& b, std::int64_t d);

/// Full row rank of the one-hot expansion of tree_to_matrix.
bool rank_check(const CloneTree& tree, std::span<const int> state_counts);

/// Exact rank over the rationals.
std::size_t matrix_rank(std::vector<std::vector<Rational>> rows);

}  // namespace ppm
