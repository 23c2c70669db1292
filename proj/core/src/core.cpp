#include "ppm/core.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ppm {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NegativeEntry: return "NegativeEntry";
    case ErrorKind::RowSumMismatch: return "RowSumMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::UnknownState: return "UnknownState";
    case ErrorKind::InvalidStateTree: return "InvalidStateTree";
    case ErrorKind::IncompleteTree: return "IncompleteTree";
    case ErrorKind::InconsistentTree: return "InconsistentTree";
    case ErrorKind::SamePair: return "SamePair";
    case ErrorKind::InvalidUsage: return "InvalidUsage";
    case ErrorKind::InvalidInterval: return "InvalidInterval";
    case ErrorKind::IncompatibleProportions: return "IncompatibleProportions";
    case ErrorKind::EmptyIntersection: return "EmptyIntersection";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::UnsupportedState: return "UnsupportedState";
    case ErrorKind::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::EmptySolutionSet: return "EmptySolutionSet";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::InvalidTree: return "InvalidTree";
  }
  return "Unknown";
}

std::string to_string(CharStatePair v) {
  if (v.is_root()) return "root";
  return std::to_string(v.character) + ":" + std::to_string(v.state);
}

std::string to_string(const Edge& e) { return to_string(e.parent) + "->" + to_string(e.child); }

// ---------------------------------------------------------------------------
// StateTree

StateTree::StateTree(std::vector<int> parent) : parent_(std::move(parent)) {
  const int k = num_states();
  if (k < 1 || k > 32) throw Error(ErrorKind::InvalidStateTree, "state count must be in [1, 32]");
  if (parent_[0] != -1) throw Error(ErrorKind::InvalidStateTree, "state 0 must be the root");
  children_.assign(k, {});
  for (int i = 1; i < k; ++i) {
    if (parent_[i] < 0 || parent_[i] >= k || parent_[i] == i) {
      throw Error(ErrorKind::InvalidStateTree,
                  "state " + std::to_string(i) + " has an invalid parent");
    }
    children_[parent_[i]].push_back(i);
  }
  for (int i = 1; i < k; ++i) {
    int steps = 0;
    for (int s = i; s != 0; s = parent_[s]) {
      if (++steps > k) throw Error(ErrorKind::InvalidStateTree, "state tree has a cycle");
    }
  }
  masks_.assign(k, 0);
  for (int i = 0; i < k; ++i) {
    for (int s = i; s != -1; s = parent_[s]) masks_[s] |= (1u << i);
  }
}

void StateTree::check_state(int state) const {
  if (state < 0 || state >= num_states()) {
    throw Error(ErrorKind::UnknownState, "state " + std::to_string(state) + " not in state tree");
  }
}

int StateTree::parent(int state) const {
  check_state(state);
  return parent_[state];
}

const std::vector<int>& StateTree::children(int state) const {
  check_state(state);
  return children_[state];
}

bool StateTree::is_ancestor(int ancestor, int state) const {
  check_state(ancestor);
  check_state(state);
  return (masks_[ancestor] >> state) & 1u;
}

std::uint32_t StateTree::descendant_mask(int state) const {
  check_state(state);
  return masks_[state];
}

std::uint32_t DescendantSet::mask() const {
  std::uint32_t m = 0;
  for (int s : states) m |= (1u << s);
  return m;
}

DescendantSet descendant_set(const StateTree& tree, int state, int character) {
  if (state < 0 || state >= tree.num_states()) {
    throw Error(ErrorKind::UnknownState, "state " + std::to_string(state) + " not in state tree");
  }
  DescendantSet result{character, state, {}};
  std::vector<int> stack{state};
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    result.states.push_back(s);
    for (int child : tree.children(s)) stack.push_back(child);
  }
  std::sort(result.states.begin(), result.states.end());
  return result;
}

// ---------------------------------------------------------------------------
// StateTable

StateTable::StateTable(int samples, std::vector<int> state_counts)
    : samples_(samples), counts_(std::move(state_counts)) {
  if (samples_ < 0) throw Error(ErrorKind::ShapeMismatch, "negative sample count");
  offsets_.reserve(counts_.size());
  for (int k : counts_) {
    if (k < 1) throw Error(ErrorKind::ShapeMismatch, "character needs at least one state");
    offsets_.push_back(stride_);
    stride_ += static_cast<std::size_t>(k);
  }
  values_.assign(stride_ * static_cast<std::size_t>(samples_), Rational(0));
}

StateTable::StateTable(std::vector<int> state_counts,
                       const std::vector<std::vector<std::vector<Rational>>>& values)
    : StateTable(static_cast<int>(values.size()), std::move(state_counts)) {
  for (int p = 0; p < samples_; ++p) {
    if (values[p].size() != counts_.size()) {
      throw Error(ErrorKind::ShapeMismatch,
                  "sample " + std::to_string(p) + " has the wrong character count");
    }
    for (int c = 0; c < num_characters(); ++c) {
      if (static_cast<int>(values[p][c].size()) != counts_[c]) {
        throw Error(ErrorKind::ShapeMismatch, "sample " + std::to_string(p) + ", character " +
                                                  std::to_string(c) + " has the wrong state count");
      }
      for (int i = 0; i < counts_[c]; ++i) (*this)(p, c, i) = values[p][c][i];
    }
  }
}

void validate_tensor(const FrequencyTensor& f) {
  for (int p = 0; p < f.num_samples(); ++p) {
    for (int c = 0; c < f.num_characters(); ++c) {
      Rational sum = 0;
      for (int i = 0; i < f.num_states(c); ++i) {
        if (f(p, c, i) < 0) {
          throw Error(ErrorKind::NegativeEntry, "negative frequency at sample " + std::to_string(p) +
                                                    ", character " + std::to_string(c) +
                                                    ", state " + std::to_string(i));
        }
        sum += f(p, c, i);
      }
      if (sum != 1) {
        throw Error(ErrorKind::RowSumMismatch, "frequencies of sample " + std::to_string(p) +
                                                   ", character " + std::to_string(c) +
                                                   " sum to " + to_text(sum));
      }
    }
  }
}

void validate_intervals(const FrequencyIntervalTensor& iv) {
  if (iv.lower.state_counts() != iv.upper.state_counts() ||
      iv.lower.num_samples() != iv.upper.num_samples()) {
    throw Error(ErrorKind::ShapeMismatch, "lower and upper bounds differ in shape");
  }
  for (int p = 0; p < iv.num_samples(); ++p) {
    for (int c = 0; c < iv.num_characters(); ++c) {
      if (iv.upper(p, c, 0) != 1) {
        throw Error(ErrorKind::InvalidInterval, "upper bound of state 0 must be 1 (sample " +
                                                    std::to_string(p) + ", character " +
                                                    std::to_string(c) + ")");
      }
      for (int i = 0; i < iv.lower.num_states(c); ++i) {
        const Rational& lo = iv.lower(p, c, i);
        const Rational& hi = iv.upper(p, c, i);
        if (lo < 0 || hi > 1 || lo > hi) {
          throw Error(ErrorKind::InvalidInterval, "interval [" + to_text(lo) + ", " + to_text(hi) +
                                                      "] at sample " + std::to_string(p) +
                                                      ", character " + std::to_string(c) +
                                                      ", state " + std::to_string(i));
        }
      }
    }
  }
}

FrequencyIntervalTensor point_intervals(const FrequencyTensor& f) {
  FrequencyIntervalTensor iv{f, f};
  for (int p = 0; p < f.num_samples(); ++p) {
    for (int c = 0; c < f.num_characters(); ++c) iv.upper(p, c, 0) = 1;
  }
  return iv;
}

Rational cumulative_frequency(const FrequencyTensor& f, int sample, const DescendantSet& set) {
  if (set.character < 0 || set.character >= f.num_characters()) {
    throw Error(ErrorKind::UnknownState, "character " + std::to_string(set.character) + " unknown");
  }
  Rational sum = 0;
  for (int s : set.states) {
    if (s < 0 || s >= f.num_states(set.character)) {
      throw Error(ErrorKind::UnknownState, "state " + std::to_string(s) + " unknown");
    }
    sum += f(sample, set.character, s);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// CloneTree

CloneTree::CloneTree(std::vector<Edge> edges) : edges_(std::move(edges)) {
  for (auto& e : edges_) {
    e.parent = CharStatePair::of(e.parent.character, e.parent.state);
    e.child = CharStatePair::of(e.child.character, e.child.state);
    if (e.child.is_root()) throw Error(ErrorKind::InvalidTree, "the root cannot be a child");
    if (!parent_.emplace(e.child, e.parent).second) {
      throw Error(ErrorKind::InvalidTree, "vertex " + to_string(e.child) + " has two parents");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  for (const auto& e : edges_) {
    if (!e.parent.is_root() && !parent_.contains(e.parent)) {
      throw Error(ErrorKind::InvalidTree, "vertex " + to_string(e.parent) + " is not connected");
    }
    children_[e.parent].push_back(e.child);
  }
  // Every vertex must reach the root.
  for (const auto& [child, parent] : parent_) {
    std::size_t steps = 0;
    for (CharStatePair v = child; !v.is_root(); v = parent_.at(v)) {
      if (++steps > parent_.size()) throw Error(ErrorKind::InvalidTree, "edges contain a cycle");
    }
  }
}

std::vector<CharStatePair> CloneTree::vertices() const {
  std::vector<CharStatePair> out;
  out.reserve(parent_.size() + 1);
  out.push_back(CharStatePair::root());
  for (const auto& entry : parent_) out.push_back(entry.first);
  return out;
}

std::optional<CharStatePair> CloneTree::parent(CharStatePair v) const {
  const auto it = parent_.find(v);
  if (it == parent_.end()) return std::nullopt;
  return it->second;
}

std::vector<CharStatePair> CloneTree::children(CharStatePair v) const {
  const auto it = children_.find(v);
  if (it == children_.end()) return {};
  return it->second;
}

bool CloneTree::has_edge(const Edge& e) const {
  const auto it = parent_.find(e.child);
  return it != parent_.end() && it->second == e.parent;
}

bool CloneTree::is_subtree_of(const CloneTree& other) const {
  return std::all_of(edges_.begin(), edges_.end(), [&](const Edge& e) { return other.has_edge(e); });
}

std::vector<int> CloneTree::state_vector(CharStatePair v, int num_characters) const {
  std::vector<int> row(static_cast<std::size_t>(num_characters), 0);
  // Walking upward, the first vertex seen for a character fixes its state.
  std::vector<bool> fixed(row.size(), false);
  for (CharStatePair x = v; !x.is_root(); x = parent_.at(x)) {
    if (x.character >= num_characters) {
      throw Error(ErrorKind::UnknownState, "vertex " + to_string(x) + " out of range");
    }
    if (!fixed[x.character]) {
      fixed[x.character] = true;
      row[x.character] = x.state;
    }
  }
  return row;
}

bool is_complete(const CloneTree& tree, std::span<const int> state_counts) {
  std::size_t expected = 1;
  for (std::size_t c = 0; c < state_counts.size(); ++c) {
    for (int i = 1; i < state_counts[c]; ++i) {
      if (!tree.contains(CharStatePair::of(static_cast<int>(c), i))) return false;
    }
    expected += static_cast<std::size_t>(state_counts[c] - 1);
  }
  return tree.num_vertices() == expected;
}

bool is_consistent(const CloneTree& tree, const StateTreeSet& trees) {
  for (const auto& e : tree.edges()) {
    const auto v = e.child;
    if (v.character < 0 || v.character >= static_cast<int>(trees.size())) return false;
    const StateTree& s = trees[v.character];
    if (v.state < 1 || v.state >= s.num_states()) return false;
    // Nearest c-labelled proper ancestor; the root stands for state 0.
    int nearest = 0;
    for (CharStatePair x = e.parent; !x.is_root(); x = *tree.parent(x)) {
      if (x.character == v.character) {
        nearest = x.state;
        break;
      }
    }
    if (nearest != s.parent(v.state)) return false;
  }
  return true;
}

void require_consistent(const CloneTree& tree, const StateTreeSet& trees) {
  if (!is_consistent(tree, trees)) {
    throw Error(ErrorKind::InconsistentTree, "clone tree is not consistent with the state trees");
  }
}

std::vector<std::vector<int>> tree_to_matrix(const CloneTree& tree,
                                             std::span<const int> state_counts) {
  if (!is_complete(tree, state_counts)) {
    throw Error(ErrorKind::IncompleteTree, "tree_to_matrix needs a complete clone tree");
  }
  const int n = static_cast<int>(state_counts.size());
  std::map<CharStatePair, std::vector<int>> rows;
  rows[CharStatePair::root()] = std::vector<int>(static_cast<std::size_t>(n), 0);
  // Parents are resolved before children by walking in BFS order from the root.
  std::vector<CharStatePair> queue{CharStatePair::root()};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto v = queue[head];
    for (const auto child : tree.children(v)) {
      auto row = rows.at(v);
      row[child.character] = child.state;
      rows[child] = std::move(row);
      queue.push_back(child);
    }
  }
  std::vector<std::vector<int>> matrix;
  for (const auto v : tree.vertices()) matrix.push_back(rows.at(v));
  return matrix;
}

// ---------------------------------------------------------------------------
// UsageMatrix

UsageMatrix::UsageMatrix(int samples, std::vector<CharStatePair> columns)
    : samples_(samples), columns_(std::move(columns)) {
  values_.assign(static_cast<std::size_t>(samples_) * columns_.size(), Rational(0));
}

int UsageMatrix::column(CharStatePair v) const {
  const auto it = std::lower_bound(columns_.begin(), columns_.end(), v);
  if (it == columns_.end() || *it != v) {
    throw Error(ErrorKind::InvalidUsage, "usage matrix has no column for " + to_string(v));
  }
  return static_cast<int>(it - columns_.begin());
}

void require_matching_shape(const std::vector<int>& state_counts, const StateTreeSet& trees) {
  if (state_counts.size() != trees.size()) {
    throw Error(ErrorKind::ShapeMismatch, "need one state tree per character");
  }
  for (std::size_t c = 0; c < trees.size(); ++c) {
    if (trees[c].num_states() != state_counts[c]) {
      throw Error(ErrorKind::ShapeMismatch,
                  "state tree of character " + std::to_string(c) + " has the wrong state count");
    }
  }
}

}  // namespace ppm
