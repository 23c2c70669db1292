#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppm/error.hpp"
#include "ppm/rational.hpp"

namespace ppm {

inline constexpr int kRootCharacter = -1;

/// A character-state pair labelling a clone-tree vertex. Every (c, 0) names
/// the same merged root, so state 0 is normalised to the root sentinel.
struct CharStatePair {
  int character = kRootCharacter;
  int state = 0;

  static constexpr CharStatePair root() { return {}; }
  static constexpr CharStatePair of(int character, int state) {
    return state == 0 ? root() : CharStatePair{character, state};
  }

  constexpr bool is_root() const { return character == kRootCharacter; }
  auto operator<=>(const CharStatePair&) const = default;
};

std::string to_string(CharStatePair v);

/// Rooted tree over the states 0..k-1 of one character; state 0 is the root.
class StateTree {
 public:
  StateTree() : StateTree(std::vector<int>{-1}) {}
  /// parent[0] must be -1; every other entry names a state in range and the
  /// parent links must reach state 0 without cycles.
  explicit StateTree(std::vector<int> parent);

  int num_states() const { return static_cast<int>(parent_.size()); }
  int parent(int state) const;
  const std::vector<int>& children(int state) const;
  const std::vector<int>& parents() const { return parent_; }
  /// Reflexive: is_ancestor(i, i) is true.
  bool is_ancestor(int ancestor, int state) const;
  /// Bit j set iff state j lies in the subtree of `state`.
  std::uint32_t descendant_mask(int state) const;

  bool operator==(const StateTree& other) const { return parent_ == other.parent_; }

 private:
  void check_state(int state) const;

  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<std::uint32_t> masks_;
};

using StateTreeSet = std::vector<StateTree>;

struct DescendantSet {
  int character = 0;
  int state = 0;  // the pair (character, state) owning this set
  std::vector<int> states;  // sorted

  std::uint32_t mask() const;
  bool operator==(const DescendantSet&) const = default;
};

/// { j : state <=_S j }, found by walking the subtree below `state`.
DescendantSet descendant_set(const StateTree& tree, int state, int character = 0);

/// Per-sample, per-character, per-state table of exact values. Characters may
/// have different state counts.
class StateTable {
 public:
  StateTable() = default;
  StateTable(int samples, std::vector<int> state_counts);
  StateTable(std::vector<int> state_counts,
             const std::vector<std::vector<std::vector<Rational>>>& values);

  int num_samples() const { return samples_; }
  int num_characters() const { return static_cast<int>(counts_.size()); }
  int num_states(int character) const { return counts_.at(character); }
  const std::vector<int>& state_counts() const { return counts_; }

  const Rational& operator()(int sample, int character, int state) const {
    return values_[index(sample, character, state)];
  }
  Rational& operator()(int sample, int character, int state) {
    return values_[index(sample, character, state)];
  }
  std::span<const Rational> row(int sample, int character) const {
    return {values_.data() + index(sample, character, 0),
            static_cast<std::size_t>(counts_[character])};
  }

  bool operator==(const StateTable&) const = default;

 private:
  std::size_t index(int sample, int character, int state) const {
    return static_cast<std::size_t>(sample) * stride_ + offsets_[character] +
           static_cast<std::size_t>(state);
  }

  int samples_ = 0;
  std::vector<int> counts_;
  std::vector<std::size_t> offsets_;
  std::size_t stride_ = 0;
  std::vector<Rational> values_;
};

/// Observed mixture proportions f[p][c][i].
using FrequencyTensor = StateTable;

struct FrequencyIntervalTensor {
  StateTable lower;
  StateTable upper;

  int num_samples() const { return lower.num_samples(); }
  int num_characters() const { return lower.num_characters(); }
  const std::vector<int>& state_counts() const { return lower.state_counts(); }
};

/// Throws NegativeEntry or RowSumMismatch.
void validate_tensor(const FrequencyTensor& f);

/// Throws InvalidInterval unless 0 <= l <= u <= 1 and u[p][c][0] == 1.
void validate_intervals(const FrequencyIntervalTensor& intervals);

/// Point intervals [f, f] with the state-0 upper bound lifted to 1.
FrequencyIntervalTensor point_intervals(const FrequencyTensor& f);

/// Sum of f[p][c][l] over l in the set.
Rational cumulative_frequency(const FrequencyTensor& f, int sample, const DescendantSet& set);

struct Edge {
  CharStatePair parent;
  CharStatePair child;

  auto operator<=>(const Edge&) const = default;
};

std::string to_string(const Edge& e);

/// Rooted tree whose non-root vertices are character-state pairs.
class CloneTree {
 public:
  CloneTree() = default;
  /// Throws InvalidTree unless the edges form a tree rooted at the merged root
  /// with every pair appearing at most once.
  explicit CloneTree(std::vector<Edge> edges);

  /// Sorted by (parent, child).
  const std::vector<Edge>& edges() const { return edges_; }
  /// Root first, then (character, state) order.
  std::vector<CharStatePair> vertices() const;
  std::size_t num_vertices() const { return parent_.size() + 1; }
  bool contains(CharStatePair v) const { return v.is_root() || parent_.contains(v); }
  std::optional<CharStatePair> parent(CharStatePair v) const;
  std::vector<CharStatePair> children(CharStatePair v) const;
  bool has_edge(const Edge& e) const;
  /// Edge-set inclusion.
  bool is_subtree_of(const CloneTree& other) const;
  /// State vector of a vertex: state of every character along the root path.
  std::vector<int> state_vector(CharStatePair v, int num_characters) const;

  bool operator==(const CloneTree& other) const { return edges_ == other.edges_; }
  auto operator<=>(const CloneTree& other) const { return edges_ <=> other.edges_; }

 private:
  std::vector<Edge> edges_;
  std::map<CharStatePair, CharStatePair> parent_;
  std::map<CharStatePair, std::vector<CharStatePair>> children_;
};

/// Every (c, i), i >= 1, of the given state counts is a vertex.
bool is_complete(const CloneTree& tree, std::span<const int> state_counts);

/// For every vertex (c, i) the nearest ancestor labelled by character c (the
/// root counting as state 0) is (c, parent of i in S_c).
bool is_consistent(const CloneTree& tree, const StateTreeSet& trees);

/// Throws InconsistentTree if a vertex is out of range for `trees` or the
/// tree violates is_consistent.
void require_consistent(const CloneTree& tree, const StateTreeSet& trees);

/// One row per vertex (vertices() order); the root row is all zeros and each
/// other row is the parent row with the vertex's character set to its state.
/// Throws IncompleteTree if the tree is not complete for `state_counts`.
std::vector<std::vector<int>> tree_to_matrix(const CloneTree& tree,
                                             std::span<const int> state_counts);

/// u[p][v], one column per clone-tree vertex in vertices() order.
class UsageMatrix {
 public:
  UsageMatrix() = default;
  UsageMatrix(int samples, std::vector<CharStatePair> columns);

  int num_samples() const { return samples_; }
  const std::vector<CharStatePair>& columns() const { return columns_; }
  int column(CharStatePair v) const;

  const Rational& operator()(int sample, int col) const {
    return values_[static_cast<std::size_t>(sample) * columns_.size() + col];
  }
  Rational& operator()(int sample, int col) {
    return values_[static_cast<std::size_t>(sample) * columns_.size() + col];
  }
  const Rational& at(int sample, CharStatePair v) const { return (*this)(sample, column(v)); }

  bool operator==(const UsageMatrix&) const = default;

 private:
  int samples_ = 0;
  std::vector<CharStatePair> columns_;
  std::vector<Rational> values_;
};

/// A cladistic instance: point frequencies plus one state tree per character.
struct Instance {
  FrequencyTensor frequencies;
  StateTreeSet state_trees;
  std::vector<std::string> names;
};

struct IntervalInstance {
  FrequencyIntervalTensor intervals;
  StateTreeSet state_trees;
  std::vector<std::string> names;
};

/// Throws ShapeMismatch unless one state tree per character with matching
/// state counts.
void require_matching_shape(const std::vector<int>& state_counts, const StateTreeSet& trees);

}  // namespace ppm
