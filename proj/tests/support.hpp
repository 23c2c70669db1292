#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ppm/core.hpp"
#include "ppm/enumeration.hpp"
#include "ppm/io.hpp"

namespace ppm::testing {

inline Rational q(const char* text) { return parse_rational(text); }

inline StateTree chain(int k) {
  std::vector<int> parent(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) parent[i] = i - 1;
  return StateTree(parent);
}

inline StateTree star(int k) {
  std::vector<int> parent(static_cast<std::size_t>(k), 0);
  parent[0] = -1;
  return StateTree(parent);
}

// values[p][c] as decimal strings
inline FrequencyTensor tensor(const std::vector<std::vector<std::vector<const char*>>>& values) {
  std::vector<int> counts;
  for (const auto& row : values.at(0)) counts.push_back(static_cast<int>(row.size()));
  std::vector<std::vector<std::vector<Rational>>> exact;
  for (const auto& sample : values) {
    auto& out = exact.emplace_back();
    for (const auto& row : sample) {
      auto& r = out.emplace_back();
      for (const char* v : row) r.push_back(q(v));
    }
  }
  return FrequencyTensor(counts, exact);
}

// Edges written as {"root", "0:1"}.
inline CloneTree tree(const std::vector<std::pair<const char*, const char*>>& edges) {
  std::vector<Edge> out;
  for (const auto& [a, b] : edges) out.push_back({parse_vertex(a), parse_vertex(b)});
  return CloneTree(out);
}

inline std::set<CloneTree> trees_of(const SolutionSet& set) {
  std::set<CloneTree> out;
  for (const auto& s : set.solutions) out.insert(s.tree);
  return out;
}

inline std::optional<ErrorKind> error_kind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

// Number of spanning arborescences of g rooted at vertex 0 (matrix-tree theorem).
inline Rational arborescence_count(const AncestryGraph& g) {
  const int n = g.num_vertices() - 1;
  std::vector<std::vector<Rational>> lap(n, std::vector<Rational>(n, Rational(0)));
  for (int t = 0; t < g.num_vertices(); ++t) {
    for (int h : g.out(t)) {
      lap[h - 1][h - 1] += 1;
      if (t > 0) lap[t - 1][h - 1] -= 1;
    }
  }
  Rational det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (lap[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return 0;
    if (pivot != col) {
      std::swap(lap[pivot], lap[col]);
      det = -det;
    }
    det *= lap[col][col];
    for (int r = col + 1; r < n; ++r) {
      const Rational factor = lap[r][col] / lap[col][col];
      for (int c = col; c < n; ++c) lap[r][c] -= factor * lap[col][c];
    }
  }
  return det;
}

}  // namespace ppm::testing
