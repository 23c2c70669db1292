#pragma once

#include <string>
#include <vector>

#include "ppm/core.hpp"

namespace ppm {

/// Cladistic ancestry graph. Vertex 0 is the merged root, the rest follow
/// (character, state) order. Edge labels are the state-tree descendant sets of
/// the endpoints, available through descendants().
class AncestryGraph {
 public:
  AncestryGraph() = default;
  AncestryGraph(const StateTreeSet& trees, std::vector<std::vector<int>> out);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  std::size_t num_edges() const;
  const std::vector<CharStatePair>& vertices() const { return vertices_; }
  CharStatePair vertex(int index) const { return vertices_[index]; }
  /// Throws UnknownState for pairs outside the graph.
  int index(CharStatePair v) const;
  /// Heads of the edges leaving `index`, sorted ascending.
  const std::vector<int>& out(int index) const { return out_[index]; }
  bool has_edge(CharStatePair tail, CharStatePair head) const;
  /// All edges, sorted.
  std::vector<Edge> edges() const;
  /// Descendant set of a non-root vertex; the root has none.
  const DescendantSet& descendants(int index) const { return descendants_[index]; }
  const std::vector<int>& state_counts() const { return counts_; }

 private:
  std::vector<CharStatePair> vertices_;
  std::vector<std::vector<int>> out_;
  std::vector<DescendantSet> descendants_;
  std::vector<int> counts_;
};

/// MSAC: f+(A) >= f+(B) in every sample, and B a proper subset of A when both
/// sets belong to one character. Throws SamePair if A and B name one pair.
bool check_msac(const FrequencyTensor& f, const DescendantSet& a, const DescendantSet& b);

/// Edges (c,i) -> (d,j) passing MSAC on the state-tree descendant sets; within
/// a character only S_c parent-to-child edges, and the root (state 0 of every
/// character) reaches (c,i) only when i is a child of 0 in S_c.
AncestryGraph build_cladistic_graph(const FrequencyTensor& f, const StateTreeSet& trees);

/// Same shape with the optimistic interval MSAC: sum of upper bounds over A is
/// at least the sum of lower bounds over B in every sample.
AncestryGraph build_cladistic_graph(const FrequencyIntervalTensor& intervals,
                                    const StateTreeSet& trees);

/// MSSC: f+(D_v) minus the children's f+ is nonnegative at every vertex.
/// Throws InconsistentTree if the tree does not fit the state trees.
bool check_mssc(const FrequencyTensor& f, const CloneTree& tree, const StateTreeSet& trees);

/// Graphviz rendering; vertex labels "c:i", edge labels the descendant sets.
std::string to_dot(const AncestryGraph& graph, const std::vector<std::string>& names = {});

}  // namespace ppm
