#include "ppm/usage.hpp"

#include <string>

namespace ppm {

namespace {

void check_range(const CloneTree& tree, const FrequencyTensor& f, const StateTreeSet& trees) {
  require_matching_shape(f.state_counts(), trees);
  require_consistent(tree, trees);
}

}  // namespace

UsageMatrix compute_usage(const FrequencyTensor& f, const CloneTree& tree,
                          const StateTreeSet& trees) {
  check_range(tree, f, trees);
  if (!is_complete(tree, f.state_counts())) {
    throw Error(ErrorKind::IncompleteTree, "usage needs a complete clone tree");
  }
  const auto vertices = tree.vertices();
  UsageMatrix u(f.num_samples(), vertices);
  for (int p = 0; p < f.num_samples(); ++p) {
    auto fplus = [&](CharStatePair v) -> Rational {
      if (v.is_root()) return Rational(1);
      return cumulative_frequency(f, p, descendant_set(trees[v.character], v.state, v.character));
    };
    for (std::size_t col = 0; col < vertices.size(); ++col) {
      Rational value = fplus(vertices[col]);
      for (const auto child : tree.children(vertices[col])) value -= fplus(child);
      u(p, static_cast<int>(col)) = value;
    }
  }
  return u;
}

bool generates(const FrequencyTensor& f, const CloneTree& tree, const StateTreeSet& trees) {
  const UsageMatrix u = compute_usage(f, tree, trees);
  for (int p = 0; p < u.num_samples(); ++p) {
    for (std::size_t col = 0; col < u.columns().size(); ++col) {
      if (u(p, static_cast<int>(col)) < 0) return false;
    }
  }
  return true;
}

FrequencyTensor mix(const CloneTree& tree, const UsageMatrix& usage,
                    const std::vector<int>& state_counts) {
  const auto vertices = tree.vertices();
  if (usage.columns() != vertices) {
    throw Error(ErrorKind::InvalidUsage, "usage columns do not match the tree vertices");
  }
  const int n = static_cast<int>(state_counts.size());
  std::vector<std::vector<int>> rows;
  rows.reserve(vertices.size());
  for (const auto v : vertices) {
    if (!v.is_root() && (v.character >= n || v.state >= state_counts[v.character])) {
      throw Error(ErrorKind::InvalidUsage, "vertex " + to_string(v) + " outside the state counts");
    }
    rows.push_back(tree.state_vector(v, n));
  }
  FrequencyTensor f(usage.num_samples(), state_counts);
  for (int p = 0; p < usage.num_samples(); ++p) {
    Rational total = 0;
    for (std::size_t col = 0; col < vertices.size(); ++col) {
      const Rational& u = usage(p, static_cast<int>(col));
      if (u < 0) {
        throw Error(ErrorKind::InvalidUsage, "negative usage in sample " + std::to_string(p));
      }
      total += u;
      for (int c = 0; c < n; ++c) f(p, c, rows[col][c]) += u;
    }
    if (total != 1) {
      throw Error(ErrorKind::InvalidUsage,
                  "usage of sample " + std::to_string(p) + " sums to " + to_text(total));
    }
  }
  return f;
}

}  // namespace ppm
