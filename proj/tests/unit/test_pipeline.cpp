#include <gtest/gtest.h>

#include "ppm/io.hpp"
#include "ppm/metrics.hpp"
#include "ppm/pipeline.hpp"
#include "ppm/simulator.hpp"
#include "support.hpp"

using namespace ppm;
using namespace ppm::testing;

namespace {

MeasurementTable table_of(const SimulatedInstance& sim, int m) {
  MeasurementTable table;
  for (int p = 0; p < m; ++p) table.samples.push_back("s" + std::to_string(p));
  table.loci = sim.measurements;
  return table;
}

}  // namespace

TEST(Pipeline, ExactRecoversTruth) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto sim = simulate_instance({.n = 4, .m = 4, .seed = seed});
    const auto result = run_measurements(table_of(sim, 4), {.mode = Mode::Exact});
    const auto truth = sim.global_tree();
    Rational best = 0;
    for (const auto& s : result.document.solutions) best = std::max(best, concordance(truth, s.tree));
    EXPECT_EQ(best, 1) << seed;
  }
}

TEST(Pipeline, JobsDoNotChangeOutput) {
  const auto sim = simulate_instance({.n = 4, .m = 3, .coverage = 500.0, .seed = 21});
  for (Mode mode : {Mode::Exact, Mode::Noisy}) {
    const auto a = run_measurements(table_of(sim, 3), {.mode = mode, .jobs = 1});
    const auto b = run_measurements(table_of(sim, 3), {.mode = mode, .jobs = 4});
    EXPECT_EQ(write_solutions_json(a.document), write_solutions_json(b.document));
  }
}

TEST(Pipeline, MaxSolutionsTruncates) {
  TensorDocument doc;
  doc.names = {"a", "b", "c", "d"};
  doc.state_trees = StateTreeSet(4, chain(2));
  doc.frequencies = tensor({{{"1", "0"}, {"1", "0"}, {"1", "0"}, {"1", "0"}}});
  const auto full = run_tensor(doc, {.mode = Mode::Exact});
  EXPECT_EQ(full.document.solutions.size(), 125u);
  EXPECT_FALSE(full.document.truncated);
  const auto cut = run_tensor(doc, {.mode = Mode::Exact, .max_solutions = 10});
  EXPECT_EQ(cut.document.solutions.size(), 10u);
  EXPECT_TRUE(cut.document.truncated);
}

TEST(Pipeline, TensorModes) {
  TensorDocument doc;
  doc.names = {"a"};
  doc.state_trees = {chain(3)};
  doc.frequencies = tensor({{{"0.5", "0.3", "0.2"}}});
  EXPECT_EQ(run_tensor(doc, {.mode = Mode::Noisy}).document.solutions.size(), 1u);
  TensorDocument only_intervals = doc;
  only_intervals.intervals = point_intervals(*doc.frequencies);
  only_intervals.frequencies.reset();
  EXPECT_EQ(error_kind([&] { run_tensor(only_intervals, {.mode = Mode::Exact}); }),
            ErrorKind::InvalidConfig);
}

TEST(Pipeline, LargestOnly) {
  const auto sim = simulate_instance({.n = 4, .m = 5, .coverage = 50.0, .seed = 2});
  const auto result = run_measurements(table_of(sim, 5), {.mode = Mode::Noisy, .largest_only = true});
  std::size_t largest = 0;
  for (const auto& s : result.document.solutions) largest = std::max(largest, s.tree.num_vertices());
  for (const auto& s : result.document.solutions) EXPECT_EQ(s.tree.num_vertices(), largest);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_GE(resolve_jobs(0), 1);
  EXPECT_EQ(resolve_jobs(3), 3);
}
