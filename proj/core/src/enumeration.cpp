#include "ppm/enumeration.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include <boost/functional/hash.hpp>

#include "ppm/usage.hpp"

namespace ppm {

namespace {

constexpr int kNoParent = -1;

// Per-sample common denominators. When every one stays below 2^50 the search
// runs on scaled int64 values, which are exact as long as sums stay below 2^63.
struct Scaling {
  bool fits = true;
  std::vector<BigInt> scale;
};

Scaling choose_scaling(const std::vector<const StateTable*>& tables, int samples) {
  Scaling result;
  const BigInt cap = BigInt(1) << 50;
  for (int p = 0; p < samples; ++p) {
    BigInt lcm_p = 1;
    for (const StateTable* t : tables) {
      for (int c = 0; c < t->num_characters(); ++c) {
        for (const Rational& value : t->row(p, c)) {
          lcm_p = boost::multiprecision::lcm(lcm_p, BigInt(denominator(value)));
          if (lcm_p >= cap) result.fits = false;
        }
      }
    }
    result.scale.push_back(lcm_p);
  }
  return result;
}

template <class S>
S to_scalar(const Rational& value, const BigInt& scale);

template <>
std::int64_t to_scalar<std::int64_t>(const Rational& value, const BigInt& scale) {
  const BigInt scaled = numerator(value) * (scale / denominator(value));
  return scaled.convert_to<std::int64_t>();
}

template <>
Rational to_scalar<Rational>(const Rational& value, const BigInt&) {
  return value;
}

template <class S>
Rational from_scalar(const S& value, const BigInt& scale) {
  return Rational(value) / Rational(scale);
}

// Graph edges in index form, with per-tail lists kept in head order.
struct EdgeList {
  std::vector<int> tail;
  std::vector<int> head;
  std::vector<std::vector<int>> out;

  explicit EdgeList(const AncestryGraph& g) : out(static_cast<std::size_t>(g.num_vertices())) {
    for (int t = 0; t < g.num_vertices(); ++t) {
      for (int h : g.out(t)) {
        out[t].push_back(static_cast<int>(tail.size()));
        tail.push_back(t);
        head.push_back(h);
      }
    }
  }
};

// Search state common to both algorithms: the partial tree with state rows.
class PartialTree {
 public:
  PartialTree(const AncestryGraph& g, const StateTreeSet& trees)
      : graph_(g),
        n_(static_cast<int>(trees.size())),
        size_(g.num_vertices()),
        parent_(size_, kNoParent),
        in_tree_(size_, 0),
        children_(size_),
        rows_(static_cast<std::size_t>(size_) * n_, 0) {
    character_.assign(size_, -1);
    state_.assign(size_, 0);
    sparent_.assign(size_, 0);
    for (int v = 1; v < size_; ++v) {
      const auto pair = g.vertex(v);
      character_[v] = pair.character;
      state_[v] = pair.state;
      sparent_[v] = trees[pair.character].parent(pair.state);
    }
    in_tree_[0] = 1;
    count_ = 1;
  }

  int size() const { return size_; }
  int count() const { return count_; }
  bool spanning() const { return count_ == size_; }
  bool contains(int v) const { return in_tree_[v] != 0; }
  int parent(int v) const { return parent_[v]; }
  const std::vector<int>& children(int v) const { return children_[v]; }
  int character(int v) const { return character_[v]; }

  // State consistency for a new vertex under `tail`.
  bool consistent(int tail, int head) const {
    return rows_[static_cast<std::size_t>(tail) * n_ + character_[head]] == sparent_[head];
  }

  void add(int tail, int head) {
    parent_[head] = tail;
    in_tree_[head] = 1;
    children_[tail].push_back(head);
    std::copy_n(rows_.begin() + static_cast<std::ptrdiff_t>(tail) * n_, n_,
                rows_.begin() + static_cast<std::ptrdiff_t>(head) * n_);
    rows_[static_cast<std::size_t>(head) * n_ + character_[head]] =
        static_cast<std::uint8_t>(state_[head]);
    ++count_;
  }

  void remove(int tail, int head) {
    children_[tail].pop_back();
    parent_[head] = kNoParent;
    in_tree_[head] = 0;
    --count_;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> result;
    for (int v = 1; v < size_; ++v) {
      if (in_tree_[v]) result.push_back({graph_.vertex(parent_[v]), graph_.vertex(v)});
    }
    return result;
  }

  std::size_t hash() const {
    std::size_t seed = 0;
    boost::hash_combine(seed, parent_);
    boost::hash_combine(seed, children_);
    return seed;
  }

 private:
  const AncestryGraph& graph_;
  int n_;
  int size_;
  std::vector<int> parent_;
  std::vector<std::uint8_t> in_tree_;
  std::vector<std::vector<int>> children_;
  std::vector<std::uint8_t> rows_;
  std::vector<int> character_;
  std::vector<int> state_;
  std::vector<int> sparent_;
  int count_ = 0;
};

[[noreturn]] void invariant_failure(const std::string& what) {
  throw Error(ErrorKind::InvalidTree, "search invariant violated: " + what);
}

// ---------------------------------------------------------------------------
// Exact search

template <class S>
class ExactSearch {
 public:
  using Visitor = std::function<void(const PartialTree&, const std::vector<S>& slack)>;

  ExactSearch(const AncestryGraph& g, const StateTreeSet& trees, const FrequencyTensor& f,
              const Scaling& scaling, const EnumerateOptions& options, Visitor visit)
      : graph_(g),
        trees_(trees),
        edges_(g),
        tree_(g, trees),
        m_(f.num_samples()),
        options_(options),
        visit_(std::move(visit)) {
    const int size = g.num_vertices();
    fplus_.assign(static_cast<std::size_t>(size) * m_, S(0));
    for (int p = 0; p < m_; ++p) fplus_[p] = to_scalar<S>(Rational(1), scaling.scale[p]);
    for (int v = 1; v < size; ++v) {
      const auto& d = g.descendants(v);
      for (int p = 0; p < m_; ++p) {
        S sum(0);
        for (int s : d.states) sum += to_scalar<S>(f(p, d.character, s), scaling.scale[p]);
        fplus_[static_cast<std::size_t>(v) * m_ + p] = sum;
      }
    }
    slack_.assign(fplus_.size(), S(0));
    for (int p = 0; p < m_; ++p) slack_[p] = fplus_[p];
  }

  bool run() {
    std::vector<int> frontier;
    push_extensions(0, frontier);
    grow(std::move(frontier));
    return truncated_;
  }

 private:
  const S& at(const std::vector<S>& v, int vertex, int p) const {
    return v[static_cast<std::size_t>(vertex) * m_ + p];
  }
  S& at(std::vector<S>& v, int vertex, int p) { return v[static_cast<std::size_t>(vertex) * m_ + p]; }

  bool fits(int tail, int head) const {
    for (int p = 0; p < m_; ++p) {
      if (at(slack_, tail, p) < at(fplus_, head, p)) return false;
    }
    return true;
  }

  void push_extensions(int v, std::vector<int>& frontier) const {
    for (int e : edges_.out[v]) {
      const int h = edges_.head[e];
      if (!tree_.contains(h) && tree_.consistent(v, h) && fits(v, h)) frontier.push_back(e);
    }
  }

  void add(int t, int h) {
    tree_.add(t, h);
    for (int p = 0; p < m_; ++p) {
      at(slack_, t, p) -= at(fplus_, h, p);
      at(slack_, h, p) = at(fplus_, h, p);
    }
  }

  void remove(int t, int h) {
    for (int p = 0; p < m_; ++p) {
      at(slack_, t, p) += at(fplus_, h, p);
      at(slack_, h, p) = S(0);
    }
    tree_.remove(t, h);
  }

  void check(const std::vector<int>& frontier) const {
    if (!is_consistent(CloneTree(tree_.edges()), trees_)) invariant_failure("partial tree is not state-consistent");
    for (int e : frontier) {
      const int t = edges_.tail[e];
      const int h = edges_.head[e];
      if (!tree_.contains(t) || tree_.contains(h) || !tree_.consistent(t, h) || !fits(t, h)) {
        invariant_failure("stale frontier edge " + to_string(Edge{graph_.vertex(t), graph_.vertex(h)}));
      }
    }
  }

  std::size_t state_hash(const std::vector<int>& frontier) const {
    std::size_t seed = tree_.hash();
    boost::hash_combine(seed, frontier);
    for (const S& s : slack_) boost::hash_combine(seed, std::hash<std::string>{}(Rational(s).str()));
    return seed;
  }

  void grow(std::vector<int> frontier) {
    if (options_.check_invariants) check(frontier);
    if (tree_.spanning()) {
      if (options_.limit && emitted_ >= *options_.limit) {
        truncated_ = true;
        return;
      }
      ++emitted_;
      visit_(tree_, slack_);
      return;
    }
    while (!frontier.empty() && !truncated_) {
      const int e = frontier.back();
      frontier.pop_back();
      const int t = edges_.tail[e];
      const int h = edges_.head[e];
      const std::size_t before = options_.check_invariants ? state_hash(frontier) : 0;
      add(t, h);
      std::vector<int> child;
      child.reserve(frontier.size() + edges_.out[h].size());
      for (int g : frontier) {
        const int gh = edges_.head[g];
        if (gh == h) continue;
        if (edges_.tail[g] == t && !fits(t, gh)) continue;
        child.push_back(g);
      }
      push_extensions(h, child);
      grow(std::move(child));
      remove(t, h);
      if (options_.check_invariants && state_hash(frontier) != before) {
        invariant_failure("state not restored after backtracking");
      }
    }
  }

  const AncestryGraph& graph_;
  const StateTreeSet& trees_;
  EdgeList edges_;
  PartialTree tree_;
  int m_;
  EnumerateOptions options_;
  Visitor visit_;
  std::vector<S> fplus_;
  std::vector<S> slack_;
  std::size_t emitted_ = 0;
  bool truncated_ = false;
};

template <class S>
bool run_exact(const AncestryGraph& g, const FrequencyTensor& f, const StateTreeSet& trees,
               const Scaling& scaling, const EnumerateOptions& options, SolutionSet& out) {
  const auto& columns = g.vertices();
  const int m = f.num_samples();
  ExactSearch<S> search(g, trees, f, scaling, options,
                        [&](const PartialTree& tree, const std::vector<S>& slack) {
                          UsageMatrix usage(m, columns);
                          for (int p = 0; p < m; ++p) {
                            for (int v = 0; v < tree.size(); ++v) {
                              usage(p, v) = from_scalar(
                                  slack[static_cast<std::size_t>(v) * m + p], scaling.scale[p]);
                            }
                          }
                          out.solutions.push_back({CloneTree(tree.edges()), std::move(usage), {}});
                        });
  return search.run();
}

// ---------------------------------------------------------------------------
// Interval search

template <class S>
class NoisySearch {
 public:
  using Visitor = std::function<void(const PartialTree&)>;

  NoisySearch(const AncestryGraph& g, const StateTreeSet& trees,
              const FrequencyIntervalTensor& intervals, const Scaling& scaling,
              const EnumerateOptions& options, Visitor visit)
      : graph_(g),
        trees_(trees),
        edges_(g),
        tree_(g, trees),
        m_(intervals.num_samples()),
        options_(options),
        visit_(std::move(visit)) {
    const int size = g.num_vertices();
    lower_.assign(static_cast<std::size_t>(size) * m_, S(0));
    upper_.assign(lower_.size(), S(0));
    one_.resize(m_);
    for (int p = 0; p < m_; ++p) one_[p] = to_scalar<S>(Rational(1), scaling.scale[p]);
    dset_.resize(size);
    by_character_.resize(trees.size());
    for (int v = 1; v < size; ++v) {
      const auto pair = g.vertex(v);
      by_character_[pair.character].push_back(v);
      for (int p = 0; p < m_; ++p) {
        at(lower_, v, p) = to_scalar<S>(intervals.lower(p, pair.character, pair.state),
                                        scaling.scale[p]);
        at(upper_, v, p) = to_scalar<S>(intervals.upper(p, pair.character, pair.state),
                                        scaling.scale[p]);
      }
      for (int s : g.descendants(v).states) {
        if (s != pair.state) dset_[v].push_back(g.index(CharStatePair::of(pair.character, s)));
      }
    }
    fhat_ = lower_;
    for (int p = 0; p < m_; ++p) at(fhat_, 0, p) = S(0);
  }

  bool run() {
    std::vector<int> frontier;
    extend_from(0, frontier);
    grow(std::move(frontier));
    return truncated_;
  }

 private:
  const S& at(const std::vector<S>& v, int vertex, int p) const {
    return v[static_cast<std::size_t>(vertex) * m_ + p];
  }
  S& at(std::vector<S>& v, int vertex, int p) { return v[static_cast<std::size_t>(vertex) * m_ + p]; }

  S cumulative(int v, int p) const {
    S sum = at(fhat_, v, p);
    for (int w : dset_[v]) sum += at(fhat_, w, p);
    return sum;
  }

  S children_sum(int v, int p) const {
    S sum(0);
    for (int w : tree_.children(v)) sum += cumulative(w, p);
    return sum;
  }

  // f-hat of a tree vertex from its children and same-character descendants.
  S formula(int v, int p) const {
    S value = children_sum(v, p);
    for (int w : dset_[v]) value -= at(fhat_, w, p);
    return std::max(value, at(lower_, v, p));
  }

  struct Saved {
    int vertex;
    std::vector<S> values;
  };

  // Recomputes f-hat on the root path above `from`, recording old values.
  // Returns false as soon as a bound is broken; the caller restores either way.
  bool propagate(int from, std::vector<Saved>& saved) {
    bool ok = true;
    std::vector<char> touched(by_character_.size(), 0);
    for (int x = from; x != 0 && ok; x = tree_.parent(x)) {
      Saved entry{x, std::vector<S>(m_)};
      for (int p = 0; p < m_; ++p) {
        entry.values[p] = at(fhat_, x, p);
        at(fhat_, x, p) = formula(x, p);
        if (at(upper_, x, p) < at(fhat_, x, p)) ok = false;
      }
      saved.push_back(std::move(entry));
      touched[tree_.character(x)] = 1;
    }
    if (!ok) return false;
    for (int p = 0; p < m_; ++p) {
      if (one_[p] < children_sum(0, p)) return false;
    }
    for (std::size_t c = 0; c < touched.size(); ++c) {
      if (!touched[c]) continue;
      for (int p = 0; p < m_; ++p) {
        S sum(0);
        for (int v : by_character_[c]) sum += at(fhat_, v, p);
        if (one_[p] < sum) return false;
      }
    }
    return true;
  }

  void restore(std::vector<Saved>& saved) {
    for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
      for (int p = 0; p < m_; ++p) at(fhat_, it->vertex, p) = it->values[p];
    }
    saved.clear();
  }

  bool leaf_fits(int h) const {
    for (int p = 0; p < m_; ++p) {
      if (at(upper_, h, p) < at(lower_, h, p)) return false;
    }
    return true;
  }

  bool try_edge(int t, int h) {
    if (tree_.contains(h) || !tree_.consistent(t, h) || !leaf_fits(h)) return false;
    tree_.add(t, h);
    std::vector<Saved> saved;
    const bool ok = propagate(t, saved);
    restore(saved);
    tree_.remove(t, h);
    return ok;
  }

  void extend_from(int v, std::vector<int>& frontier) {
    for (int e : edges_.out[v]) {
      if (try_edge(v, edges_.head[e])) frontier.push_back(e);
    }
  }

  bool maximal() {
    for (int t = 0; t < tree_.size(); ++t) {
      if (!tree_.contains(t)) continue;
      for (int e : edges_.out[t]) {
        if (try_edge(t, edges_.head[e])) return false;
      }
    }
    return true;
  }

  void check(const std::vector<int>& frontier) {
    const CloneTree current(tree_.edges());
    if (!is_consistent(current, trees_)) invariant_failure("partial tree is not state-consistent");
    for (int e : frontier) {
      const int t = edges_.tail[e];
      const int h = edges_.head[e];
      if (!tree_.contains(t) || tree_.contains(h) || !try_edge(t, h)) {
        invariant_failure("stale frontier edge " + to_string(Edge{graph_.vertex(t), graph_.vertex(h)}));
      }
    }
  }

  std::size_t state_hash(const std::vector<int>& frontier) const {
    std::size_t seed = tree_.hash();
    boost::hash_combine(seed, frontier);
    for (const S& s : fhat_) boost::hash_combine(seed, std::hash<std::string>{}(Rational(s).str()));
    return seed;
  }

  void grow(std::vector<int> frontier) {
    if (options_.check_invariants) check(frontier);
    if (frontier.empty()) {
      if (!maximal()) return;
      if (options_.limit && emitted_ >= *options_.limit) {
        truncated_ = true;
        return;
      }
      ++emitted_;
      visit_(tree_);
      return;
    }
    while (!frontier.empty() && !truncated_) {
      const int e = frontier.back();
      frontier.pop_back();
      const int t = edges_.tail[e];
      const int h = edges_.head[e];
      const std::size_t before = options_.check_invariants ? state_hash(frontier) : 0;
      tree_.add(t, h);
      std::vector<Saved> saved;
      propagate(t, saved);
      std::vector<int> child;
      child.reserve(frontier.size() + edges_.out[h].size());
      for (int g : frontier) {
        if (edges_.head[g] != h && try_edge(edges_.tail[g], edges_.head[g])) child.push_back(g);
      }
      extend_from(h, child);
      grow(std::move(child));
      restore(saved);
      tree_.remove(t, h);
      if (options_.check_invariants && state_hash(frontier) != before) {
        invariant_failure("state not restored after backtracking");
      }
    }
  }

  const AncestryGraph& graph_;
  const StateTreeSet& trees_;
  EdgeList edges_;
  PartialTree tree_;
  int m_;
  EnumerateOptions options_;
  Visitor visit_;
  std::vector<S> lower_;
  std::vector<S> upper_;
  std::vector<S> fhat_;
  std::vector<S> one_;
  std::vector<std::vector<int>> dset_;
  std::vector<std::vector<int>> by_character_;
  std::size_t emitted_ = 0;
  bool truncated_ = false;
};

template <class S>
bool run_noisy(const AncestryGraph& g, const FrequencyIntervalTensor& intervals,
               const StateTreeSet& trees, const Scaling& scaling, const EnumerateOptions& options,
               std::vector<CloneTree>& out) {
  NoisySearch<S> search(g, trees, intervals, scaling, options,
                        [&](const PartialTree& tree) { out.emplace_back(tree.edges()); });
  return search.run();
}

void require_graph_shape(const AncestryGraph& g, const std::vector<int>& counts,
                         const StateTreeSet& trees) {
  require_matching_shape(counts, trees);
  if (g.state_counts() != counts) {
    throw Error(ErrorKind::ShapeMismatch, "ancestry graph was built for a different instance");
  }
}

}  // namespace

SolutionSet enumerate(const AncestryGraph& graph, const FrequencyTensor& f,
                      const StateTreeSet& trees, const EnumerateOptions& options) {
  require_graph_shape(graph, f.state_counts(), trees);
  SolutionSet out;
  const Scaling scaling = choose_scaling({&f}, f.num_samples());
  if (scaling.fits && !options.force_rational) {
    out.truncated = run_exact<std::int64_t>(graph, f, trees, scaling, options, out);
  } else {
    Scaling unit{false, std::vector<BigInt>(static_cast<std::size_t>(f.num_samples()), BigInt(1))};
    out.truncated = run_exact<Rational>(graph, f, trees, unit, options, out);
  }
  return out;
}

SolutionCount count_solutions(const AncestryGraph& graph, const FrequencyTensor& f,
                              const StateTreeSet& trees, const EnumerateOptions& options) {
  require_graph_shape(graph, f.state_counts(), trees);
  SolutionCount out;
  Scaling scaling = choose_scaling({&f}, f.num_samples());
  if (scaling.fits && !options.force_rational) {
    ExactSearch<std::int64_t> search(graph, trees, f, scaling, options,
                                     [&](const PartialTree&, const auto&) { ++out.count; });
    out.truncated = search.run();
  } else {
    Scaling unit{false, std::vector<BigInt>(static_cast<std::size_t>(f.num_samples()), BigInt(1))};
    ExactSearch<Rational> search(graph, trees, f, unit, options,
                                 [&](const PartialTree&, const auto&) { ++out.count; });
    out.truncated = search.run();
  }
  return out;
}

SolutionSet enumerate(const Instance& instance, const EnumerateOptions& options) {
  const AncestryGraph graph = build_cladistic_graph(instance.frequencies, instance.state_trees);
  return enumerate(graph, instance.frequencies, instance.state_trees, options);
}

FrequencyTensor compute_fhat(const CloneTree& tree, const StateTable& lower,
                             const StateTreeSet& trees) {
  require_matching_shape(lower.state_counts(), trees);
  require_consistent(tree, trees);
  const int n = lower.num_characters();
  FrequencyTensor fhat = lower;
  // Post-order: children before parents.
  std::vector<CharStatePair> order;
  std::vector<CharStatePair> stack{CharStatePair::root()};
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (const auto w : tree.children(v)) stack.push_back(w);
  }
  std::reverse(order.begin(), order.end());
  for (int p = 0; p < lower.num_samples(); ++p) {
    auto cumulative = [&](CharStatePair w) {
      Rational sum = 0;
      const std::uint32_t mask = trees[w.character].descendant_mask(w.state);
      for (int s = 1; s < lower.num_states(w.character); ++s) {
        if ((mask >> s) & 1u) sum += fhat(p, w.character, s);
      }
      return sum;
    };
    for (const auto v : order) {
      if (v.is_root()) continue;
      Rational value = 0;
      for (const auto w : tree.children(v)) value += cumulative(w);
      const std::uint32_t mask = trees[v.character].descendant_mask(v.state);
      for (int s = 1; s < lower.num_states(v.character); ++s) {
        if (s != v.state && ((mask >> s) & 1u)) value -= fhat(p, v.character, s);
      }
      fhat(p, v.character, v.state) = std::max(value, lower(p, v.character, v.state));
    }
    for (int c = 0; c < n; ++c) {
      Rational rest = 1;
      for (int s = 1; s < lower.num_states(c); ++s) rest -= fhat(p, c, s);
      fhat(p, c, 0) = rest;
    }
  }
  return fhat;
}

bool is_valid_tree(const CloneTree& tree, const FrequencyIntervalTensor& intervals,
                   const StateTreeSet& trees, FrequencyTensor* witness) {
  FrequencyTensor fhat = compute_fhat(tree, intervals.lower, trees);
  for (int p = 0; p < fhat.num_samples(); ++p) {
    for (const auto v : tree.vertices()) {
      if (v.is_root()) continue;
      if (fhat(p, v.character, v.state) > intervals.upper(p, v.character, v.state)) return false;
    }
    Rational root_children = 0;
    for (const auto w : tree.children(CharStatePair::root())) {
      const std::uint32_t mask = trees[w.character].descendant_mask(w.state);
      for (int s = 1; s < fhat.num_states(w.character); ++s) {
        if ((mask >> s) & 1u) root_children += fhat(p, w.character, s);
      }
    }
    if (root_children > 1) return false;
    for (int c = 0; c < fhat.num_characters(); ++c) {
      if (fhat(p, c, 0) < 0) return false;
    }
  }
  if (witness) *witness = std::move(fhat);
  return true;
}

CloneTree state_complete(const CloneTree& tree, const std::vector<int>& state_counts) {
  std::vector<Edge> edges = tree.edges();
  while (true) {
    std::map<int, int> present;
    for (const auto& e : edges) ++present[e.child.character];
    std::set<CharStatePair> kept{CharStatePair::root()};
    // Edges are visited parent-first by repeated passes so that reachability
    // from the root is resolved.
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& e : edges) {
        const int c = e.child.character;
        const bool complete =
            c < static_cast<int>(state_counts.size()) && present[c] == state_counts[c] - 1;
        if (complete && kept.contains(e.parent) && !kept.contains(e.child)) {
          kept.insert(e.child);
          grew = true;
        }
      }
    }
    std::vector<Edge> next;
    for (const auto& e : edges) {
      if (kept.contains(e.child)) next.push_back(e);
    }
    if (next.size() == edges.size()) break;
    edges = std::move(next);
  }
  return CloneTree(std::move(edges));
}

void canonicalize(SolutionSet& set) {
  std::stable_sort(set.solutions.begin(), set.solutions.end(),
                   [](const Solution& a, const Solution& b) { return a.tree < b.tree; });
  set.solutions.erase(std::unique(set.solutions.begin(), set.solutions.end(),
                                  [](const Solution& a, const Solution& b) {
                                    return a.tree == b.tree;
                                  }),
                      set.solutions.end());
}

SolutionSet noisy_enumerate(const AncestryGraph& graph, const FrequencyIntervalTensor& intervals,
                            const StateTreeSet& trees, const EnumerateOptions& options) {
  validate_intervals(intervals);
  require_graph_shape(graph, intervals.state_counts(), trees);
  std::vector<CloneTree> maximal;
  bool truncated = false;
  const Scaling scaling = choose_scaling({&intervals.lower, &intervals.upper},
                                         intervals.num_samples());
  if (scaling.fits && !options.force_rational) {
    truncated = run_noisy<std::int64_t>(graph, intervals, trees, scaling, options, maximal);
  } else {
    Scaling unit{false,
                 std::vector<BigInt>(static_cast<std::size_t>(intervals.num_samples()), BigInt(1))};
    truncated = run_noisy<Rational>(graph, intervals, trees, unit, options, maximal);
  }
  std::set<CloneTree> reduced;
  for (const auto& tree : maximal) reduced.insert(state_complete(tree, intervals.state_counts()));
  SolutionSet out;
  out.truncated = truncated;
  for (const auto& tree : reduced) {
    FrequencyTensor witness = compute_fhat(tree, intervals.lower, trees);
    out.solutions.push_back({tree, std::nullopt, std::move(witness)});
  }
  return out;
}

SolutionSet noisy_enumerate(const IntervalInstance& instance, const EnumerateOptions& options) {
  const AncestryGraph graph = build_cladistic_graph(instance.intervals, instance.state_trees);
  return noisy_enumerate(graph, instance.intervals, instance.state_trees, options);
}

}  // namespace ppm
