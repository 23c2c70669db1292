#include "ppm/simulator.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/beta.hpp>

#include "ppm/usage.hpp"

namespace ppm {

namespace {

constexpr std::int64_t kUsageGrid = 1000000;

// Uniform draw from {0, ..., bound - 1}.
std::size_t pick(std::mt19937_64& rng, std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

CloneTree random_tree(const StateTreeSet& trees, std::mt19937_64& rng) {
  // Insertion order: a random topological order of the state trees.
  std::vector<CharStatePair> ready;
  for (std::size_t c = 0; c < trees.size(); ++c) {
    for (int s : trees[c].children(0)) ready.push_back(CharStatePair::of(static_cast<int>(c), s));
  }
  std::vector<Edge> edges;
  std::map<CharStatePair, std::vector<int>> rows;
  const int n = static_cast<int>(trees.size());
  rows[CharStatePair::root()] = std::vector<int>(n, 0);
  while (!ready.empty()) {
    const std::size_t k = pick(rng, ready.size());
    const CharStatePair v = ready[k];
    ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(k));
    const int want = trees[v.character].parent(v.state);
    std::vector<CharStatePair> positions;
    for (const auto& [u, row] : rows) {
      if (row[v.character] == want) positions.push_back(u);
    }
    const CharStatePair parent = positions[pick(rng, positions.size())];
    edges.push_back({parent, v});
    auto row = rows.at(parent);
    row[v.character] = v.state;
    rows[v] = std::move(row);
    for (int s : trees[v.character].children(v.state)) ready.push_back(CharStatePair::of(v.character, s));
  }
  return CloneTree(std::move(edges));
}

UsageMatrix random_usage(const CloneTree& tree, int m, std::mt19937_64& rng) {
  const auto columns = tree.vertices();
  UsageMatrix u(m, columns);
  const std::size_t k = columns.size();
  std::uniform_int_distribution<std::int64_t> grid(0, kUsageGrid);
  for (int p = 0; p < m; ++p) {
    std::vector<std::int64_t> cuts{0, kUsageGrid};
    for (std::size_t j = 0; j + 1 < k; ++j) cuts.push_back(grid(rng));
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t j = 0; j < k; ++j) {
      u(p, static_cast<int>(j)) = make_rational(cuts[j + 1] - cuts[j], kUsageGrid);
    }
  }
  return u;
}

}  // namespace

void validate_config(const SimulationConfig& config) {
  if (config.n < 1) throw Error(ErrorKind::InvalidConfig, "n must be at least 1");
  if (config.m < 1) throw Error(ErrorKind::InvalidConfig, "m must be at least 1");
  if (config.coverage && !(*config.coverage > 0)) {
    throw Error(ErrorKind::InvalidConfig, "coverage must be positive");
  }
  if (!(config.confidence > 0 && config.confidence < 1)) {
    throw Error(ErrorKind::InvalidConfig, "confidence must lie in (0, 1)");
  }
  if (config.forced_trees) {
    if (static_cast<int>(config.forced_trees->size()) != config.n) {
      throw Error(ErrorKind::InvalidConfig, "need one forced tree per character");
    }
    for (int t : *config.forced_trees) {
      if (t < 0 || t >= kCatalogSize) throw Error(ErrorKind::InvalidConfig, "unknown catalog tree");
    }
  }
}

CloneTree SimulatedInstance::global_tree() const {
  std::vector<Edge> edges;
  auto relabel = [&](CharStatePair v) {
    if (v.is_root()) return v;
    return CharStatePair::of(v.character, catalog()[tree_ids[v.character]].states[v.state]);
  };
  for (const auto& e : tree.edges()) edges.push_back({relabel(e.parent), relabel(e.child)});
  return CloneTree(std::move(edges));
}

SimulatedInstance simulate_instance(const SimulationConfig& config) {
  validate_config(config);
  std::mt19937_64 rng(config.seed);
  SimulatedInstance sim;
  std::vector<int> counts;
  for (int c = 0; c < config.n; ++c) {
    const int t = config.forced_trees ? (*config.forced_trees)[c]
                                      : static_cast<int>(pick(rng, kCatalogSize));
    sim.tree_ids.push_back(t);
    sim.state_trees.push_back(catalog()[t].tree);
    sim.names.push_back("c" + std::to_string(c));
    counts.push_back(catalog()[t].tree.num_states());
  }
  sim.tree = random_tree(sim.state_trees, rng);
  sim.usage = random_usage(sim.tree, config.m, rng);
  sim.frequencies = mix(sim.tree, sim.usage, counts);

  const auto observables = to_observables(sim.frequencies, sim.tree_ids);
  for (int c = 0; c < config.n; ++c) {
    LocusMeasurement locus;
    locus.name = sim.names[c];
    for (int p = 0; p < config.m; ++p) {
      SampleMeasurement s;
      s.vaf = observables[c][p].vaf;
      s.mu = observables[c][p].mu;
      if (config.coverage) {
        const ReadNoise noise = add_read_noise(s.vaf, config, rng);
        s.vaf_lb = noise.lower;
        s.vaf_ub = noise.upper;
      } else {
        s.vaf_lb = s.vaf;
        s.vaf_ub = s.vaf;
      }
      locus.samples.push_back(std::move(s));
    }
    sim.measurements.push_back(std::move(locus));
  }
  return sim;
}

std::vector<std::vector<Observable>> to_observables(const FrequencyTensor& f,
                                                    const std::vector<int>& tree_ids) {
  if (static_cast<int>(tree_ids.size()) != f.num_characters()) {
    throw Error(ErrorKind::ShapeMismatch, "need one catalog tree per character");
  }
  std::vector<std::vector<Observable>> result(tree_ids.size());
  for (int c = 0; c < f.num_characters(); ++c) {
    if (tree_ids[c] < 0 || tree_ids[c] >= kCatalogSize) {
      throw Error(ErrorKind::UnsupportedState, "unknown catalog tree");
    }
    const auto& states = catalog()[tree_ids[c]].states;
    if (static_cast<int>(states.size()) != f.num_states(c)) {
      throw Error(ErrorKind::UnsupportedState,
                  "character " + std::to_string(c) + " does not match its catalog tree");
    }
    for (int p = 0; p < f.num_samples(); ++p) {
      std::vector<Rational> global(kCnaStates);
      for (std::size_t i = 0; i < states.size(); ++i) global[states[i]] = f(p, c, static_cast<int>(i));
      Observable o;
      o.mu.mu0 = global[0] + global[1];
      o.mu.loh = global[2] + global[3] + global[4];
      o.mu.scd = global[5] + global[6];
      o.mu.sca = global[7] + global[8] + global[9];
      o.vaf = vaf_from_frequencies(global);
      result[c].push_back(std::move(o));
    }
  }
  return result;
}

ReadNoise add_read_noise(const Rational& h, const SimulationConfig& config, std::mt19937_64& rng) {
  if (h < 0 || h > 1) throw Error(ErrorKind::PreconditionViolated, "VAF must lie in [0, 1]");
  if (!config.coverage) throw Error(ErrorKind::InvalidConfig, "read noise needs a coverage");
  ReadNoise noise;
  const std::int64_t total = std::poisson_distribution<std::int64_t>(*config.coverage)(rng);
  if (total == 0) return noise;
  const std::int64_t variant = std::binomial_distribution<std::int64_t>(total, to_double(h))(rng);
  noise.var_count = variant;
  noise.ref_count = total - variant;
  const boost::math::beta_distribution<double> posterior(static_cast<double>(variant) + 1,
                                                         static_cast<double>(total - variant) + 1);
  const double tail = (1 - config.confidence) / 2;
  noise.lower = std::max(Rational(0), floor_to_decimal(from_double(boost::math::quantile(posterior, tail)), 6));
  noise.upper = std::min(Rational(1), ceil_to_decimal(from_double(boost::math::quantile(posterior, 1 - tail)), 6));
  // No variant reads (or no reference reads) pin the bound to the boundary.
  if (variant == 0) noise.lower = 0;
  if (variant == total) noise.upper = 1;
  return noise;
}

}  // namespace ppm
