#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ppm/cna_model.hpp"
#include "ppm/core.hpp"

namespace ppm {

struct SimulationConfig {
  int n = 4;
  int m = 2;
  /// Expected reads per locus; absent means error-free observables.
  std::optional<double> coverage;
  std::uint64_t seed = 0;
  double confidence = 0.95;
  /// Catalog tree per character instead of a uniform draw.
  std::optional<std::vector<int>> forced_trees;
};

/// Throws InvalidConfig unless n >= 1, m >= 1, coverage > 0 and confidence
/// in (0, 1).
void validate_config(const SimulationConfig& config);

struct Observable {
  Rational vaf;
  Proportions mu;
};

struct ReadNoise {
  std::int64_t ref_count = 0;
  std::int64_t var_count = 0;
  Rational lower = 0;
  Rational upper = 1;
};

struct SimulatedInstance {
  std::vector<int> tree_ids;
  StateTreeSet state_trees;  // local indices of each catalog tree
  CloneTree tree;            // local indices
  UsageMatrix usage;
  FrequencyTensor frequencies;
  std::vector<std::string> names;
  /// One locus per character, VAF intervals filled from read noise when a
  /// coverage is set and collapsed to the point VAF otherwise.
  std::vector<LocusMeasurement> measurements;

  /// Tree with (character, global copy-number state) labels.
  CloneTree global_tree() const;
};

/// Catalog trees, a uniformly attached consistent complete clone tree, flat
/// simplex usages on a 10^-6 grid, the mixed tensor and its observables.
/// Deterministic for a given seed.
SimulatedInstance simulate_instance(const SimulationConfig& config);

/// Class sums and Eq. (3) per character and sample; result[c][p].
/// Throws UnsupportedState if a character carries mass outside its tree.
std::vector<std::vector<Observable>> to_observables(const FrequencyTensor& f,
                                                    const std::vector<int>& tree_ids);

/// total ~ Poisson(coverage), variant ~ Binomial(total, h), central interval of
/// Beta(variant + 1, total - variant + 1) rounded outward to 6 decimals.
ReadNoise add_read_noise(const Rational& h, const SimulationConfig& config, std::mt19937_64& rng);

}  // namespace ppm
