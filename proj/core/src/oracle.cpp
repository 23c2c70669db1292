#include "ppm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ppm/usage.hpp"

namespace ppm {

namespace {

// Depth-first assignment of parents in vertex order. A vertex is checked
// against the state trees as soon as its whole root path is assigned.
class ParentSearch {
 public:
  ParentSearch(const FrequencyTensor& f, const StateTreeSet& trees) : f_(f), trees_(trees) {
    vertices_.push_back(CharStatePair::root());
    for (std::size_t c = 0; c < trees.size(); ++c) {
      for (int i = 1; i < trees[c].num_states(); ++i) {
        vertices_.push_back(CharStatePair::of(static_cast<int>(c), i));
      }
    }
    parent_.assign(vertices_.size(), -1);
  }

  std::size_t num_vertices() const { return vertices_.size(); }

  SolutionSet run() {
    assign(1);
    canonicalize(out_);
    return std::move(out_);
  }

 private:
  // Follows parents from v; false on a cycle or an unassigned vertex.
  bool reaches_root(std::size_t v) const {
    std::size_t steps = 0;
    for (int x = static_cast<int>(v); x != 0; x = parent_[x]) {
      if (x < 0 || ++steps > vertices_.size()) return false;
    }
    return true;
  }

  bool closes_cycle(std::size_t v) const {
    std::size_t steps = 0;
    for (int x = parent_[v]; x > 0; x = parent_[x]) {
      if (static_cast<std::size_t>(x) == v || ++steps > vertices_.size()) return true;
    }
    return false;
  }

  bool locally_consistent(std::size_t v) const {
    const auto pair = vertices_[v];
    int nearest = 0;
    for (int x = parent_[v]; x != 0; x = parent_[x]) {
      if (vertices_[x].character == pair.character) {
        nearest = vertices_[x].state;
        break;
      }
    }
    return nearest == trees_[pair.character].parent(pair.state);
  }

  void assign(std::size_t v) {
    if (v == vertices_.size()) {
      std::vector<Edge> edges;
      for (std::size_t u = 1; u < vertices_.size(); ++u) edges.push_back({vertices_[parent_[u]], vertices_[u]});
      CloneTree tree(std::move(edges));
      if (!is_consistent(tree, trees_) || !generates(f_, tree, trees_)) return;
      out_.solutions.push_back({tree, compute_usage(f_, tree, trees_), std::nullopt});
      return;
    }
    for (std::size_t p = 0; p < vertices_.size(); ++p) {
      if (p == v) continue;
      parent_[v] = static_cast<int>(p);
      if (closes_cycle(v)) continue;
      // Vertices whose root path just became complete can be checked now.
      bool ok = true;
      for (std::size_t u = 1; u <= v && ok; ++u) {
        if (reaches_root(u) && !locally_consistent(u)) ok = false;
      }
      if (ok) assign(v + 1);
    }
    parent_[v] = -1;
  }

  const FrequencyTensor& f_;
  const StateTreeSet& trees_;
  std::vector<CharStatePair> vertices_;
  std::vector<int> parent_;
  SolutionSet out_;
};

}  // namespace

SolutionSet brute_enumerate(const FrequencyTensor& f, const StateTreeSet& trees,
                            const BruteForceOptions& options) {
  validate_tensor(f);
  require_matching_shape(f.state_counts(), trees);
  ParentSearch search(f, trees);
  const double n = static_cast<double>(search.num_vertices());
  const double candidates = n <= 2 ? 1.0 : std::pow(n, n - 2);
  if (candidates > options.max_candidates) {
    throw Error(ErrorKind::InstanceTooLarge, "brute force would visit " +
                                                 std::to_string(candidates) + " trees");
  }
  return search.run();
}

Instance subset_sum_instance(std::vector<std::int64_t> b, std::int64_t d) {
  if (b.empty()) throw Error(ErrorKind::PreconditionViolated, "B must be nonempty");
  // Ascending order pairs with the descending epsilons so that no b-vertex
  // can sit below another one. Equal values would still nest.
  std::sort(b.begin(), b.end());
  if (std::adjacent_find(b.begin(), b.end()) != b.end()) {
    throw Error(ErrorKind::PreconditionViolated, "B must not repeat a value");
  }
  std::int64_t e = 0;
  for (auto x : b) {
    if (x <= 0) throw Error(ErrorKind::PreconditionViolated, "entries of B must be positive");
    if (x >= d) throw Error(ErrorKind::PreconditionViolated, "every b must be below d");
    e += x;
  }
  if (d >= e) throw Error(ErrorKind::PreconditionViolated, "d must be below the sum of B");
  const std::int64_t t = static_cast<std::int64_t>(b.size());
  const Rational epsilon = Rational(std::min(d, e - d)) / Rational(e * (t + 1));
  const int n = static_cast<int>(t) + 2;
  Instance instance;
  instance.frequencies = FrequencyTensor(2, std::vector<int>(n, 2));
  auto set = [&](int p, int c, const Rational& one) {
    instance.frequencies(p, c, 1) = one;
    instance.frequencies(p, c, 0) = 1 - one;
  };
  set(0, 0, make_rational(d, e));
  set(0, 1, make_rational(e - d, e));
  set(1, 0, make_rational(e - d, e));
  set(1, 1, make_rational(d, e));
  for (int k = 0; k < t; ++k) {
    set(0, k + 2, make_rational(b[k], e));
    set(1, k + 2, Rational(t - k) * epsilon / e);
  }
  for (int c = 0; c < n; ++c) {
    instance.state_trees.emplace_back(std::vector<int>{-1, 0});
    instance.names.push_back(c < 2 ? (c == 0 ? "d" : "e-d") : "b" + std::to_string(c - 1));
  }
  return instance;
}

bool subset_sum_feasible(const std::vector<std::int64_t>& b, std::int64_t d) {
  if (d < 0) return false;
  std::vector<char> reachable(static_cast<std::size_t>(d) + 1, 0);
  reachable[0] = 1;
  for (auto x : b) {
    if (x < 0) return false;
    for (std::int64_t s = d; s >= x; --s) {
      if (reachable[s - x]) reachable[s] = 1;
    }
  }
  return reachable[d] != 0;
}

std::size_t matrix_rank(std::vector<std::vector<Rational>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Rational factor = rows[r][col] / rows[rank][col];
      for (std::size_t k = col; k < cols; ++k) rows[r][k] -= factor * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

bool rank_check(const CloneTree& tree, std::span<const int> state_counts) {
  const auto matrix = tree_to_matrix(tree, state_counts);
  const std::size_t width = std::accumulate(state_counts.begin(), state_counts.end(), std::size_t{0});
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : matrix) {
    std::vector<Rational> expanded(width, Rational(0));
    std::size_t offset = 0;
    for (std::size_t c = 0; c < state_counts.size(); ++c) {
      expanded[offset + static_cast<std::size_t>(row[c])] = 1;
      offset += static_cast<std::size_t>(state_counts[c]);
    }
    rows.push_back(std::move(expanded));
  }
  return matrix_rank(rows) == matrix.size();
}

}  // namespace ppm
