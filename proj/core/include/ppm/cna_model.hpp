#pragma once

#include <array>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ppm/core.hpp"

namespace ppm {

inline constexpr int kCnaStates = 10;
inline constexpr int kCatalogSize = 13;

/// Maternal copies x, paternal copies y, mutated copies z.
struct CopyNumberState {
  int x;
  int y;
  int z;
};

/// The ten states, indexed as in the frequency tables:
/// 0 (1,1,0) 1 (1,1,1) 2 (2,0,0) 3 (2,0,1) 4 (2,0,2)
/// 5 (1,0,0) 6 (1,0,1) 7 (2,1,0) 8 (2,1,1) 9 (2,1,2)
inline constexpr std::array<CopyNumberState, kCnaStates> kCopyNumberStates{{
    {1, 1, 0}, {1, 1, 1}, {2, 0, 0}, {2, 0, 1}, {2, 0, 2},
    {1, 0, 0}, {1, 0, 1}, {2, 1, 0}, {2, 1, 1}, {2, 1, 2},
}};

enum class CnaClass { None, LOH, SCD, SCA };

CnaClass class_of_state(int state);
const char* to_string(CnaClass cls);

/// Proportions of the normal, CN-LOH, SCD and SCA populations in one sample.
struct Proportions {
  Rational mu0 = 1;
  Rational loh = 0;
  Rational scd = 0;
  Rational sca = 0;

  const Rational& of(CnaClass cls) const;
};

enum class EdgeKind { SNV, LOH, SCD, SCA };

struct CatalogTree {
  int id = 0;
  CnaClass cls = CnaClass::None;
  /// Global states present in the tree, ascending; local state i is states[i].
  std::vector<int> states;
  /// Tree over local states.
  StateTree tree;
  /// (global parent, global child, kind).
  std::vector<std::tuple<int, int, EdgeKind>> edges;

  int local(int global_state) const;  // -1 when absent
};

/// S0..S12 in table order.
const std::vector<CatalogTree>& catalog();

/// Catalog frequencies as a 10-entry vector over the global states; absent
/// states are 0. Throws IncompatibleProportions when mu does not fit the
/// tree's CNA class or does not sum to 1.
std::vector<Rational> derive_frequencies(int tree_id, const Rational& h, const Proportions& mu);

/// Admissible VAF range of a tree: all derived frequencies are nonnegative
/// exactly for h inside it.
std::pair<Rational, Rational> vaf_interval(int tree_id, const Proportions& mu);

/// Eq. (3): sum z f / sum (x+y) f over a 10-entry vector.
Rational vaf_from_frequencies(std::span<const Rational> f);

struct SampleMeasurement {
  Rational vaf = 0;
  Rational vaf_lb = 0;
  Rational vaf_ub = 1;
  Proportions mu;
};

struct LocusMeasurement {
  std::string name;
  std::vector<SampleMeasurement> samples;
};

/// Class rule plus nonnegative derived frequencies at the point VAF in every
/// sample.
bool is_compatible(int tree_id, const LocusMeasurement& locus);

/// Class rule plus a nonempty intersection of every sample's VAF interval with
/// the admissible range.
bool is_compatible_interval(int tree_id, const LocusMeasurement& locus);

/// Endpoint evaluation of the affine formulas over [lb, ub] clamped to the
/// admissible range; 10 entries, absent states [0, 0], state 0 upper set to 1.
/// Throws EmptyIntersection or IncompatibleProportions.
std::vector<std::pair<Rational, Rational>> derive_frequency_intervals(int tree_id,
                                                                      const Rational& lb,
                                                                      const Rational& ub,
                                                                      const Proportions& mu);

/// Restriction of a 10-entry vector to a catalog tree's local states.
std::vector<Rational> to_local(int tree_id, std::span<const Rational> global);

struct Combination {
  /// Catalog tree per kept character.
  std::vector<int> tree_ids;
  /// Input locus index per kept character.
  std::vector<int> loci;
  /// Global state of every local state, per kept character.
  std::vector<std::vector<int>> labels;
  StateTreeSet state_trees;
  std::vector<std::string> names;
  /// Exact mode.
  FrequencyTensor frequencies;
  /// Noisy mode.
  FrequencyIntervalTensor intervals;

  /// "3-0-12" style identifier, "input" without catalog trees.
  std::string id() const;
  /// Local (character, state) of a solution mapped to (locus, global state).
  CharStatePair to_global(CharStatePair v) const;
};

struct CombinationSet {
  std::vector<Combination> combinations;
  /// Loci with no compatible tree.
  std::vector<int> dropped;
};

enum class Mode { Exact, Noisy };

/// Cartesian product of the compatible trees of every locus, in lexicographic
/// order of catalog indices.
CombinationSet combinations(const std::vector<LocusMeasurement>& loci, Mode mode);

}  // namespace ppm
