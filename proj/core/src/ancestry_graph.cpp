#include "ppm/ancestry_graph.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace ppm {

namespace {

std::vector<CharStatePair> graph_vertices(const StateTreeSet& trees) {
  std::vector<CharStatePair> vertices{CharStatePair::root()};
  for (std::size_t c = 0; c < trees.size(); ++c) {
    for (int i = 1; i < trees[c].num_states(); ++i) {
      vertices.push_back(CharStatePair::of(static_cast<int>(c), i));
    }
  }
  return vertices;
}

// Candidate edges before the frequency test.
bool structurally_allowed(const StateTreeSet& trees, CharStatePair tail, CharStatePair head) {
  if (head.is_root() || tail == head) return false;
  const StateTree& s = trees[head.character];
  if (tail.is_root()) return s.parent(head.state) == 0;
  if (tail.character == head.character) return s.parent(head.state) == tail.state;
  return true;
}

AncestryGraph build(const StateTreeSet& trees,
                    const std::function<bool(CharStatePair, CharStatePair)>& passes) {
  const auto vertices = graph_vertices(trees);
  std::vector<std::vector<int>> out(vertices.size());
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = 1; b < vertices.size(); ++b) {
      if (structurally_allowed(trees, vertices[a], vertices[b]) && passes(vertices[a], vertices[b])) {
        out[a].push_back(static_cast<int>(b));
      }
    }
  }
  return AncestryGraph(trees, std::move(out));
}

std::string set_text(const DescendantSet& d) {
  std::string s = "{";
  for (std::size_t k = 0; k < d.states.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(d.states[k]);
  }
  return s + "}";
}

}  // namespace

AncestryGraph::AncestryGraph(const StateTreeSet& trees, std::vector<std::vector<int>> out)
    : vertices_(graph_vertices(trees)), out_(std::move(out)) {
  if (out_.size() != vertices_.size()) {
    throw Error(ErrorKind::ShapeMismatch, "adjacency does not match the vertex count");
  }
  for (auto& heads : out_) std::sort(heads.begin(), heads.end());
  descendants_.resize(vertices_.size());
  for (std::size_t v = 1; v < vertices_.size(); ++v) {
    const auto pair = vertices_[v];
    descendants_[v] = descendant_set(trees[pair.character], pair.state, pair.character);
  }
  for (const auto& s : trees) counts_.push_back(s.num_states());
}

std::size_t AncestryGraph::num_edges() const {
  std::size_t total = 0;
  for (const auto& heads : out_) total += heads.size();
  return total;
}

int AncestryGraph::index(CharStatePair v) const {
  const auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) {
    throw Error(ErrorKind::UnknownState, "vertex " + to_string(v) + " is not in the graph");
  }
  return static_cast<int>(it - vertices_.begin());
}

bool AncestryGraph::has_edge(CharStatePair tail, CharStatePair head) const {
  const auto t = std::lower_bound(vertices_.begin(), vertices_.end(), tail);
  const auto h = std::lower_bound(vertices_.begin(), vertices_.end(), head);
  if (t == vertices_.end() || *t != tail || h == vertices_.end() || *h != head) return false;
  const auto& heads = out_[t - vertices_.begin()];
  return std::binary_search(heads.begin(), heads.end(), static_cast<int>(h - vertices_.begin()));
}

std::vector<Edge> AncestryGraph::edges() const {
  std::vector<Edge> result;
  for (std::size_t t = 0; t < out_.size(); ++t) {
    for (int h : out_[t]) result.push_back({vertices_[t], vertices_[h]});
  }
  return result;
}

bool check_msac(const FrequencyTensor& f, const DescendantSet& a, const DescendantSet& b) {
  const bool a_root = a.state == 0;
  const bool b_root = b.state == 0;
  if ((a_root && b_root) || (a.character == b.character && a.state == b.state)) {
    throw Error(ErrorKind::SamePair, "MSAC needs two distinct character-state pairs");
  }
  if (a.character == b.character) {
    const auto am = a.mask();
    const auto bm = b.mask();
    if ((am & bm) != bm || am == bm) return false;
  }
  for (int p = 0; p < f.num_samples(); ++p) {
    if (cumulative_frequency(f, p, a) < cumulative_frequency(f, p, b)) return false;
  }
  return true;
}

AncestryGraph build_cladistic_graph(const FrequencyTensor& f, const StateTreeSet& trees) {
  validate_tensor(f);
  require_matching_shape(f.state_counts(), trees);
  return build(trees, [&](CharStatePair tail, CharStatePair head) {
    const auto b = descendant_set(trees[head.character], head.state, head.character);
    if (tail.is_root()) {
      // f+ of the root is 1 and B is never all of S_c here.
      return true;
    }
    return check_msac(f, descendant_set(trees[tail.character], tail.state, tail.character), b);
  });
}

AncestryGraph build_cladistic_graph(const FrequencyIntervalTensor& intervals,
                                    const StateTreeSet& trees) {
  validate_intervals(intervals);
  require_matching_shape(intervals.state_counts(), trees);
  return build(trees, [&](CharStatePair tail, CharStatePair head) {
    if (tail.is_root()) return true;
    const auto a = descendant_set(trees[tail.character], tail.state, tail.character);
    const auto b = descendant_set(trees[head.character], head.state, head.character);
    for (int p = 0; p < intervals.num_samples(); ++p) {
      Rational upper = 0;
      Rational lower = 0;
      for (int s : a.states) upper += intervals.upper(p, a.character, s);
      for (int s : b.states) lower += intervals.lower(p, b.character, s);
      if (upper < lower) return false;
    }
    return true;
  });
}

bool check_mssc(const FrequencyTensor& f, const CloneTree& tree, const StateTreeSet& trees) {
  require_matching_shape(f.state_counts(), trees);
  require_consistent(tree, trees);
  auto fplus = [&](int p, CharStatePair v) -> Rational {
    if (v.is_root()) return Rational(1);
    Rational sum = 0;
    const std::uint32_t mask = trees[v.character].descendant_mask(v.state);
    for (int s = 0; s < f.num_states(v.character); ++s) {
      if ((mask >> s) & 1u) sum += f(p, v.character, s);
    }
    return sum;
  };
  for (const auto v : tree.vertices()) {
    for (int p = 0; p < f.num_samples(); ++p) {
      Rational slack = fplus(p, v);
      for (const auto w : tree.children(v)) slack -= fplus(p, w);
      if (slack < 0) return false;
    }
  }
  return true;
}

std::string to_dot(const AncestryGraph& graph, const std::vector<std::string>& names) {
  auto label = [&](CharStatePair v) {
    if (v.is_root()) return std::string("root");
    const std::string c = v.character < static_cast<int>(names.size())
                              ? names[v.character]
                              : std::to_string(v.character);
    return c + ":" + std::to_string(v.state);
  };
  std::ostringstream out;
  out << "digraph ancestry {\n";
  for (int v = 0; v < graph.num_vertices(); ++v) {
    out << "  v" << v << " [label=\"" << label(graph.vertex(v)) << "\"];\n";
  }
  for (int t = 0; t < graph.num_vertices(); ++t) {
    for (int h : graph.out(t)) {
      const auto& hd = graph.descendants(h);
      std::string tail_set = "*";
      if (t != 0) tail_set = set_text(graph.descendants(t));
      out << "  v" << t << " -> v" << h << " [label=\"" << tail_set << "," << set_text(hd)
          << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace ppm
