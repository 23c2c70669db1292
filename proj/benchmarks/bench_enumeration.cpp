#include <benchmark/benchmark.h>

#include "ppm/enumeration.hpp"
#include "ppm/oracle.hpp"
#include "ppm/pipeline.hpp"
#include "ppm/simulator.hpp"

namespace {

using namespace ppm;

// All mass at the root: every spanning tree of the complete graph is a solution.
void BM_AllRootMass(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<int> counts(static_cast<std::size_t>(n), 2);
  FrequencyTensor f(1, counts);
  for (int c = 0; c < n; ++c) f(0, c, 0) = 1;
  const StateTreeSet trees(static_cast<std::size_t>(n), StateTree({-1, 0}));
  const auto g = build_cladistic_graph(f, trees);
  std::size_t count = 0;
  for (auto _ : state) {
    count = count_solutions(g, f, trees).count;
    benchmark::DoNotOptimize(count);
  }
  state.counters["solutions"] = static_cast<double>(count);
  state.counters["trees/s"] =
      benchmark::Counter(static_cast<double>(count), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_AllRootMass)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

void BM_EnumerateSimulated(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  std::vector<SimulatedInstance> sims;
  for (std::uint64_t seed = 0; seed < 10; ++seed) sims.push_back(simulate_instance({.n = n, .m = m, .seed = seed}));
  std::size_t total = 0;
  for (auto _ : state) {
    total = 0;
    for (const auto& sim : sims) total += enumerate(Instance{sim.frequencies, sim.state_trees, {}}).size();
    benchmark::DoNotOptimize(total);
  }
  state.counters["solutions"] = static_cast<double>(total);
}
BENCHMARK(BM_EnumerateSimulated)
    ->ArgsProduct({{4, 6, 8}, {2, 5, 10}})
    ->Unit(benchmark::kMillisecond);

void BM_RationalPath(benchmark::State& state) {
  const auto sim = simulate_instance({.n = 6, .m = 2, .seed = 3});
  const Instance inst{sim.frequencies, sim.state_trees, {}};
  const EnumerateOptions opts{.force_rational = state.range(0) != 0};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate(inst, opts).size());
}
BENCHMARK(BM_RationalPath)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_NoisyPipeline(benchmark::State& state) {
  const int m = 5;
  const auto sim = simulate_instance(
      {.n = 4, .m = m, .coverage = static_cast<double>(state.range(0)), .seed = 1});
  MeasurementTable table;
  for (int p = 0; p < m; ++p) table.samples.push_back("s" + std::to_string(p));
  table.loci = sim.measurements;
  std::size_t count = 0;
  for (auto _ : state) {
    count = run_measurements(table, {.mode = Mode::Noisy, .largest_only = true, .jobs = 1})
                .document.solutions.size();
    benchmark::DoNotOptimize(count);
  }
  state.counters["solutions"] = static_cast<double>(count);
}
BENCHMARK(BM_NoisyPipeline)->Arg(50)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State& state) {
  const auto sim = simulate_instance({.n = static_cast<int>(state.range(0)), .m = 2, .seed = 4});
  for (auto _ : state) benchmark::DoNotOptimize(brute_enumerate(sim.frequencies, sim.state_trees).size());
}
BENCHMARK(BM_BruteForce)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
