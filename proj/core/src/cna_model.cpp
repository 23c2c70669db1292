#include "ppm/cna_model.hpp"

#include <algorithm>

namespace ppm {

namespace {

// f_state = a + b h for each of the ten states.
struct Affine {
  Rational a = 0;
  Rational b = 0;
};

CatalogTree make_tree(int id, CnaClass cls, std::vector<std::pair<int, int>> edges) {
  CatalogTree t;
  t.id = id;
  t.cls = cls;
  t.states.push_back(0);
  for (const auto& [from, to] : edges) t.states.push_back(to);
  std::sort(t.states.begin(), t.states.end());
  std::vector<int> parent(t.states.size(), -1);
  for (const auto& [from, to] : edges) {
    parent[t.local(to)] = t.local(from);
    const CnaClass child_cls = class_of_state(to);
    EdgeKind kind = EdgeKind::SNV;
    if (child_cls != class_of_state(from)) {
      kind = child_cls == CnaClass::LOH   ? EdgeKind::LOH
             : child_cls == CnaClass::SCD ? EdgeKind::SCD
                                          : EdgeKind::SCA;
    }
    t.edges.emplace_back(from, to, kind);
  }
  t.tree = StateTree(std::move(parent));
  return t;
}

void check_tree_id(int tree_id) {
  if (tree_id < 0 || tree_id >= kCatalogSize) {
    throw Error(ErrorKind::UnknownState, "catalog index " + std::to_string(tree_id) + " unknown");
  }
}

void check_proportions(int tree_id, const Proportions& mu) {
  check_tree_id(tree_id);
  if (mu.mu0 < 0 || mu.loh < 0 || mu.scd < 0 || mu.sca < 0 || mu.mu0 + mu.loh + mu.scd + mu.sca != 1) {
    throw Error(ErrorKind::IncompatibleProportions, "proportions must be nonnegative and sum to 1");
  }
  const CnaClass cls = catalog()[tree_id].cls;
  for (CnaClass other : {CnaClass::LOH, CnaClass::SCD, CnaClass::SCA}) {
    if (other != cls && mu.of(other) != 0) {
      throw Error(ErrorKind::IncompatibleProportions,
                  std::string("tree S") + std::to_string(tree_id) + " admits no " + to_string(other) +
                      " proportion");
    }
  }
}

std::array<Affine, kCnaStates> affine(int tree_id, const Proportions& mu) {
  check_proportions(tree_id, mu);
  std::array<Affine, kCnaStates> f{};
  const Rational& m0 = mu.mu0;
  const Rational scd_scale = 1 + m0;
  const Rational sca_scale = 2 + mu.sca;
  switch (tree_id) {
    case 0:
      f[0] = {m0, -2};
      f[1] = {0, 2};
      break;
    case 1:
      f[0] = {m0, 0};
      f[2] = {mu.loh, -2};
      f[3] = {0, 2};
      break;
    case 2:
    case 3:
      f[0] = {m0, -2};
      f[1] = {0, 2};
      f[2] = {mu.loh, 0};
      break;
    case 4:
      f[0] = {m0 + 2 * mu.loh, -2};
      f[1] = {-2 * mu.loh, 2};
      f[4] = {mu.loh, 0};
      break;
    case 5:
    case 6:
      f[0] = {m0, -scd_scale};
      f[1] = {0, scd_scale};
      f[5] = {mu.scd, 0};
      break;
    case 7:
      f[0] = {m0 + mu.scd, -scd_scale};
      f[1] = {-mu.scd, scd_scale};
      f[6] = {mu.scd, 0};
      break;
    case 8:
      f[0] = {m0, 0};
      f[5] = {mu.scd, -scd_scale};
      f[6] = {0, scd_scale};
      break;
    case 9:
      f[0] = {m0 + 2 * mu.sca, -sca_scale};
      f[1] = {-2 * mu.sca, sca_scale};
      f[9] = {mu.sca, 0};
      break;
    case 10:
      f[0] = {m0, -sca_scale};
      f[1] = {0, sca_scale};
      f[7] = {mu.sca, 0};
      break;
    case 11:
      f[0] = {m0 + mu.sca, -sca_scale};
      f[1] = {-mu.sca, sca_scale};
      f[8] = {mu.sca, 0};
      break;
    case 12:
      f[0] = {m0, 0};
      f[7] = {mu.sca, -sca_scale};
      f[8] = {0, sca_scale};
      break;
  }
  return f;
}

bool class_rule(int tree_id, const LocusMeasurement& locus) {
  const CnaClass cls = catalog()[tree_id].cls;
  bool seen = cls == CnaClass::None;
  for (const auto& s : locus.samples) {
    for (CnaClass other : {CnaClass::LOH, CnaClass::SCD, CnaClass::SCA}) {
      if (s.mu.of(other) == 0) continue;
      if (other != cls) return false;
      seen = true;
    }
  }
  return seen;
}

// Admissible VAF range clamped to the sample's interval; empty when lo > hi.
std::pair<Rational, Rational> clamp(int tree_id, const SampleMeasurement& s) {
  auto [lo, hi] = vaf_interval(tree_id, s.mu);
  return {std::max(lo, s.vaf_lb), std::min(hi, s.vaf_ub)};
}

}  // namespace

CnaClass class_of_state(int state) {
  if (state < 0 || state >= kCnaStates) {
    throw Error(ErrorKind::UnsupportedState, "state " + std::to_string(state) + " unknown");
  }
  if (state <= 1) return CnaClass::None;
  if (state <= 4) return CnaClass::LOH;
  if (state <= 6) return CnaClass::SCD;
  return CnaClass::SCA;
}

const char* to_string(CnaClass cls) {
  switch (cls) {
    case CnaClass::None: return "none";
    case CnaClass::LOH: return "LOH";
    case CnaClass::SCD: return "SCD";
    case CnaClass::SCA: return "SCA";
  }
  return "?";
}

const Rational& Proportions::of(CnaClass cls) const {
  switch (cls) {
    case CnaClass::LOH: return loh;
    case CnaClass::SCD: return scd;
    case CnaClass::SCA: return sca;
    case CnaClass::None: break;
  }
  return mu0;
}

int CatalogTree::local(int global_state) const {
  const auto it = std::lower_bound(states.begin(), states.end(), global_state);
  if (it == states.end() || *it != global_state) return -1;
  return static_cast<int>(it - states.begin());
}

const std::vector<CatalogTree>& catalog() {
  static const std::vector<CatalogTree> trees = [] {
    using C = CnaClass;
    std::vector<CatalogTree> t;
    t.push_back(make_tree(0, C::None, {{0, 1}}));
    t.push_back(make_tree(1, C::LOH, {{0, 2}, {2, 3}}));
    t.push_back(make_tree(2, C::LOH, {{0, 1}, {0, 2}}));
    t.push_back(make_tree(3, C::LOH, {{0, 1}, {1, 2}}));
    t.push_back(make_tree(4, C::LOH, {{0, 1}, {1, 4}}));
    t.push_back(make_tree(5, C::SCD, {{0, 1}, {0, 5}}));
    t.push_back(make_tree(6, C::SCD, {{0, 1}, {1, 5}}));
    t.push_back(make_tree(7, C::SCD, {{0, 1}, {1, 6}}));
    t.push_back(make_tree(8, C::SCD, {{0, 5}, {5, 6}}));
    t.push_back(make_tree(9, C::SCA, {{0, 1}, {1, 9}}));
    t.push_back(make_tree(10, C::SCA, {{0, 1}, {0, 7}}));
    t.push_back(make_tree(11, C::SCA, {{0, 1}, {1, 8}}));
    t.push_back(make_tree(12, C::SCA, {{0, 7}, {7, 8}}));
    return t;
  }();
  return trees;
}

std::vector<Rational> derive_frequencies(int tree_id, const Rational& h, const Proportions& mu) {
  const auto coefficients = affine(tree_id, mu);
  std::vector<Rational> f(kCnaStates);
  for (int s = 0; s < kCnaStates; ++s) f[s] = coefficients[s].a + coefficients[s].b * h;
  return f;
}

std::pair<Rational, Rational> vaf_interval(int tree_id, const Proportions& mu) {
  const auto coefficients = affine(tree_id, mu);
  Rational lo = 0;
  Rational hi = 1;
  for (const auto& [a, b] : coefficients) {
    if (b > 0) lo = std::max(lo, Rational(-a / b));
    if (b < 0) hi = std::min(hi, Rational(-a / b));
  }
  return {lo, hi};
}

Rational vaf_from_frequencies(std::span<const Rational> f) {
  if (f.size() != kCnaStates) {
    throw Error(ErrorKind::ShapeMismatch, "expected one frequency per copy-number state");
  }
  Rational mutated = 0;
  Rational copies = 0;
  for (int s = 0; s < kCnaStates; ++s) {
    mutated += kCopyNumberStates[s].z * f[s];
    copies += (kCopyNumberStates[s].x + kCopyNumberStates[s].y) * f[s];
  }
  if (copies == 0) throw Error(ErrorKind::ZeroDenominator, "no copies carry frequency mass");
  return mutated / copies;
}

bool is_compatible(int tree_id, const LocusMeasurement& locus) {
  check_tree_id(tree_id);
  if (!class_rule(tree_id, locus)) return false;
  for (const auto& s : locus.samples) {
    const auto f = derive_frequencies(tree_id, s.vaf, s.mu);
    if (std::any_of(f.begin(), f.end(), [](const Rational& x) { return x < 0; })) return false;
  }
  return true;
}

bool is_compatible_interval(int tree_id, const LocusMeasurement& locus) {
  check_tree_id(tree_id);
  if (!class_rule(tree_id, locus)) return false;
  for (const auto& s : locus.samples) {
    const auto [lo, hi] = clamp(tree_id, s);
    if (lo > hi) return false;
  }
  return true;
}

std::vector<std::pair<Rational, Rational>> derive_frequency_intervals(int tree_id,
                                                                      const Rational& lb,
                                                                      const Rational& ub,
                                                                      const Proportions& mu) {
  const auto coefficients = affine(tree_id, mu);
  const auto [alo, ahi] = vaf_interval(tree_id, mu);
  const Rational lo = std::max(alo, lb);
  const Rational hi = std::min(ahi, ub);
  if (lo > hi) {
    throw Error(ErrorKind::EmptyIntersection, "VAF interval misses the admissible range of S" +
                                                  std::to_string(tree_id));
  }
  std::vector<std::pair<Rational, Rational>> out(kCnaStates);
  for (int s = 0; s < kCnaStates; ++s) {
    const Rational x = coefficients[s].a + coefficients[s].b * lo;
    const Rational y = coefficients[s].a + coefficients[s].b * hi;
    out[s] = {std::min(x, y), std::max(x, y)};
  }
  out[0].second = 1;
  return out;
}

std::vector<Rational> to_local(int tree_id, std::span<const Rational> global) {
  check_tree_id(tree_id);
  std::vector<Rational> local;
  for (int s : catalog()[tree_id].states) local.push_back(global[s]);
  return local;
}

std::string Combination::id() const {
  if (std::any_of(tree_ids.begin(), tree_ids.end(), [](int t) { return t < 0; })) return "input";
  std::string s;
  for (std::size_t k = 0; k < tree_ids.size(); ++k) {
    if (k) s += "-";
    s += std::to_string(tree_ids[k]);
  }
  return s.empty() ? "none" : s;
}

CharStatePair Combination::to_global(CharStatePair v) const {
  if (v.is_root()) return v;
  return CharStatePair::of(loci.at(v.character), labels.at(v.character).at(v.state));
}

CombinationSet combinations(const std::vector<LocusMeasurement>& loci, Mode mode) {
  CombinationSet result;
  std::vector<int> kept;
  std::vector<std::vector<int>> options;
  std::size_t samples = loci.empty() ? 0 : loci.front().samples.size();
  for (std::size_t c = 0; c < loci.size(); ++c) {
    if (loci[c].samples.size() != samples) {
      throw Error(ErrorKind::ShapeMismatch, "locus " + loci[c].name + " has a different sample count");
    }
    std::vector<int> compatible;
    for (int t = 0; t < kCatalogSize; ++t) {
      const bool ok = mode == Mode::Exact ? is_compatible(t, loci[c]) : is_compatible_interval(t, loci[c]);
      if (ok) compatible.push_back(t);
    }
    if (compatible.empty()) {
      result.dropped.push_back(static_cast<int>(c));
    } else {
      kept.push_back(static_cast<int>(c));
      options.push_back(std::move(compatible));
    }
  }
  if (kept.empty()) return result;

  const int m = static_cast<int>(samples);
  std::vector<std::size_t> pick(kept.size(), 0);
  while (true) {
    Combination comb;
    comb.loci = kept;
    std::vector<int> counts;
    for (std::size_t k = 0; k < kept.size(); ++k) {
      const int t = options[k][pick[k]];
      comb.tree_ids.push_back(t);
      comb.state_trees.push_back(catalog()[t].tree);
      comb.names.push_back(loci[kept[k]].name);
      comb.labels.push_back(catalog()[t].states);
      counts.push_back(static_cast<int>(catalog()[t].states.size()));
    }
    if (mode == Mode::Exact) {
      comb.frequencies = FrequencyTensor(m, counts);
    } else {
      comb.intervals = {StateTable(m, counts), StateTable(m, counts)};
    }
    for (std::size_t k = 0; k < kept.size(); ++k) {
      const int t = comb.tree_ids[k];
      const auto& states = catalog()[t].states;
      for (int p = 0; p < m; ++p) {
        const auto& s = loci[kept[k]].samples[p];
        if (mode == Mode::Exact) {
          const auto f = derive_frequencies(t, s.vaf, s.mu);
          for (std::size_t i = 0; i < states.size(); ++i) {
            comb.frequencies(p, static_cast<int>(k), static_cast<int>(i)) = f[states[i]];
          }
        } else {
          const auto iv = derive_frequency_intervals(t, s.vaf_lb, s.vaf_ub, s.mu);
          for (std::size_t i = 0; i < states.size(); ++i) {
            comb.intervals.lower(p, static_cast<int>(k), static_cast<int>(i)) = iv[states[i]].first;
            comb.intervals.upper(p, static_cast<int>(k), static_cast<int>(i)) = iv[states[i]].second;
          }
        }
      }
    }
    result.combinations.push_back(std::move(comb));
    std::size_t k = kept.size();
    while (k > 0) {
      --k;
      if (++pick[k] < options[k].size()) break;
      pick[k] = 0;
      if (k == 0) return result;
    }
  }
}

}  // namespace ppm
