#include <gtest/gtest.h>

#include <random>

#include "ppm/enumeration.hpp"
#include "ppm/simulator.hpp"
#include "ppm/usage.hpp"
#include "support.hpp"

using namespace ppm;
using namespace ppm::testing;

TEST(Simulate, SingleCharacter) {
  const auto sim = simulate_instance({.n = 1, .m = 1, .seed = 3, .forced_trees = std::vector<int>{0}});
  EXPECT_EQ(sim.tree, tree({{"root", "0:1"}}));
  const Rational u = sim.usage.at(0, CharStatePair::of(0, 1));
  EXPECT_EQ(sim.frequencies(0, 0, 0), 1 - u);
  EXPECT_EQ(sim.frequencies(0, 0, 1), u);
}

TEST(Simulate, OutputsAreSelfConsistent) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto sim = simulate_instance({.n = 5, .m = 4, .seed = seed});
    EXPECT_TRUE(is_complete(sim.tree, sim.frequencies.state_counts()));
    EXPECT_TRUE(is_consistent(sim.tree, sim.state_trees));
    EXPECT_TRUE(generates(sim.frequencies, sim.tree, sim.state_trees));
    ASSERT_EQ(sim.measurements.size(), 5u);
    for (int c = 0; c < 5; ++c) {
      for (const auto& s : sim.measurements[c].samples) {
        EXPECT_EQ(s.vaf_lb, s.vaf);
        EXPECT_EQ(s.vaf_ub, s.vaf);
        EXPECT_TRUE(is_compatible(sim.tree_ids[c], sim.measurements[c]));
      }
    }
  }
}

TEST(Simulate, SeedDeterminesTree) {
  const auto a = simulate_instance({.n = 5, .m = 3, .seed = 11});
  const auto b = simulate_instance({.n = 5, .m = 3, .coverage = 100.0, .seed = 11});
  EXPECT_EQ(a.tree, b.tree);
  EXPECT_EQ(a.frequencies, b.frequencies);
  EXPECT_NE(simulate_instance({.n = 5, .m = 3, .seed = 12}).frequencies, a.frequencies);
}

TEST(Simulate, InvalidConfig) {
  EXPECT_EQ(error_kind([] { simulate_instance({.n = 0}); }), ErrorKind::InvalidConfig);
  EXPECT_EQ(error_kind([] { simulate_instance({.n = 2, .m = 0}); }), ErrorKind::InvalidConfig);
  EXPECT_EQ(error_kind([] { simulate_instance({.n = 2, .coverage = -1.0}); }),
            ErrorKind::InvalidConfig);
  EXPECT_EQ(error_kind([] {
              simulate_instance({.n = 2, .forced_trees = std::vector<int>{0, 13}});
            }),
            ErrorKind::InvalidConfig);
}

TEST(Observables, AllRootMass) {
  const auto f = tensor({{{"1", "0"}}});
  const auto obs = to_observables(f, {0});
  EXPECT_EQ(obs[0][0].vaf, 0);
  EXPECT_EQ(obs[0][0].mu.mu0, 1);
}

TEST(Observables, InvertDeriveFrequencies) {
  for (int t = 0; t < kCatalogSize; ++t) {
    Proportions mu;
    if (t > 0) {
      const auto cls = catalog()[t].cls;
      (cls == CnaClass::LOH ? mu.loh : cls == CnaClass::SCD ? mu.scd : mu.sca) = q("0.4");
      mu.mu0 = q("0.6");
    }
    const auto [lo, hi] = vaf_interval(t, mu);
    const Rational h = (2 * lo + hi) / 3;
    const auto global = derive_frequencies(t, h, mu);
    const auto local = to_local(t, global);
    FrequencyTensor f(1, {static_cast<int>(local.size())});
    for (std::size_t i = 0; i < local.size(); ++i) f(0, 0, static_cast<int>(i)) = local[i];
    const auto obs = to_observables(f, {t});
    EXPECT_EQ(obs[0][0].vaf, h) << t;
    EXPECT_EQ(obs[0][0].mu.mu0, mu.mu0) << t;
    EXPECT_EQ(obs[0][0].mu.loh, mu.loh) << t;
    EXPECT_EQ(obs[0][0].mu.scd, mu.scd) << t;
    EXPECT_EQ(obs[0][0].mu.sca, mu.sca) << t;
  }
}

TEST(Observables, LohMassBoundsProportion) {
  // S4 local states (0, 1, 4).
  const auto f = tensor({{{"0.3", "0.3", "0.4"}}});
  EXPECT_GE(to_observables(f, {4})[0][0].mu.loh, q("0.4"));
}

TEST(ReadNoise, ZeroVafHasZeroLowerBound) {
  std::mt19937_64 rng(1);
  SimulationConfig cfg{.coverage = 500.0};
  for (int i = 0; i < 20; ++i) {
    const auto r = add_read_noise(0, cfg, rng);
    EXPECT_EQ(r.var_count, 0);
    EXPECT_EQ(r.lower, 0);
  }
}

TEST(ReadNoise, HighCoverageNarrowsInterval) {
  std::mt19937_64 rng(2);
  SimulationConfig cfg{.coverage = 1e6};
  const Rational h = q("0.3");
  for (int i = 0; i < 100; ++i) {
    const auto r = add_read_noise(h, cfg, rng);
    EXPECT_LT(r.upper - r.lower, q("0.01"));
    EXPECT_LE(r.lower, r.upper);
  }
}

TEST(ReadNoise, NoReadsIsUninformative) {
  std::mt19937_64 rng(3);
  SimulationConfig cfg{.coverage = 1e-12};
  const auto r = add_read_noise(q("0.4"), cfg, rng);
  EXPECT_EQ(r.ref_count + r.var_count, 0);
  EXPECT_EQ(r.lower, 0);
  EXPECT_EQ(r.upper, 1);
}

TEST(ReadNoise, CoverageProducesIntervals) {
  const auto sim = simulate_instance({.n = 3, .m = 2, .coverage = 1000.0, .seed = 5});
  for (const auto& l : sim.measurements) {
    for (const auto& s : l.samples) {
      EXPECT_LE(s.vaf_lb, s.vaf_ub);
      EXPECT_LT(s.vaf_lb, s.vaf_ub);
    }
  }
}
