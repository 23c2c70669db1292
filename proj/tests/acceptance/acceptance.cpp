// Acceptance harness: one PASS/FAIL line per criterion.
//   ppm_acceptance                 run all
//   ppm_acceptance --criterion 3   run one

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ppm/cna_model.hpp"
#include "ppm/enumeration.hpp"
#include "ppm/io.hpp"
#include "ppm/oracle.hpp"
#include "ppm/pipeline.hpp"
#include "ppm/simulator.hpp"
#include "ppm/usage.hpp"

namespace fs = std::filesystem;
using namespace ppm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::set<CloneTree> trees_of(const SolutionSet& set) {
  std::set<CloneTree> out;
  for (const auto& s : set.solutions) out.insert(s.tree);
  return out;
}

template <class T>
double median(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return static_cast<double>(values[n / 2]);
  return (static_cast<double>(values[n / 2 - 1]) + static_cast<double>(values[n / 2])) / 2.0;
}

MeasurementTable table_of(const SimulatedInstance& sim, int m) {
  MeasurementTable table;
  for (int p = 0; p < m; ++p) table.samples.push_back("s" + std::to_string(p));
  table.loci = sim.measurements;
  return table;
}

// 1. enumerate equals brute force on small simulated instances.
Outcome oracle_equivalence() {
  int agree = 0;
  int total = 0;
  std::string first_bad;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 1 + static_cast<int>(seed % 4);
    const int m = 1 + static_cast<int>((seed / 4) % 3);
    const auto sim = simulate_instance({.n = n, .m = m, .seed = seed});
    const auto fast = trees_of(enumerate(Instance{sim.frequencies, sim.state_trees, sim.names}));
    const auto slow = trees_of(brute_enumerate(sim.frequencies, sim.state_trees));
    ++total;
    if (fast == slow) {
      ++agree;
    } else if (first_bad.empty()) {
      first_bad = " first mismatch seed " + std::to_string(seed);
    }
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " instances equal" + first_bad};
}

// 2. the true tree is always among the exact solutions.
Outcome ground_truth_recovery() {
  const int ns[] = {4, 5, 6};
  const int ms[] = {2, 5, 10};
  int found = 0;
  double slowest = 0;
  for (int i = 0; i < 60; ++i) {
    const int n = ns[i % 3];
    const int m = ms[(i / 3) % 3];
    const auto start = Clock::now();
    const auto sim = simulate_instance({.n = n, .m = m, .seed = 1000 + static_cast<std::uint64_t>(i)});
    const auto set = enumerate(Instance{sim.frequencies, sim.state_trees, sim.names});
    const double t = seconds_since(start);
    slowest = std::max(slowest, t);
    if (trees_of(set).contains(sim.tree) && t < 60) ++found;
  }
  std::ostringstream d;
  d << found << "/60 contain the true tree, slowest " << slowest << " s";
  return {found == 60, d.str()};
}

// 3. more samples, fewer solutions.
Outcome ambiguity_trend() {
  std::vector<std::size_t> counts2;
  std::vector<std::size_t> counts10;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (int m : {2, 10}) {
      const auto sim = simulate_instance({.n = 6, .m = m, .seed = 2000 + seed});
      const auto g = build_cladistic_graph(sim.frequencies, sim.state_trees);
      const auto c = count_solutions(g, sim.frequencies, sim.state_trees);
      (m == 2 ? counts2 : counts10).push_back(c.count);
    }
  }
  const double m2 = median(counts2);
  const double m10 = median(counts10);
  std::ostringstream d;
  d << "median count m=2: " << m2 << ", m=10: " << m10 << " (ratio " << (m2 > 0 ? m10 / m2 : 0) << ")";
  return {m10 <= 0.05 * m2, d.str()};
}

// Allowed VAF ranges per catalog tree, written out independently of the model code.
std::pair<Rational, Rational> table_interval(int t, const Proportions& mu) {
  const Rational& m0 = mu.mu0;
  switch (t) {
    case 0: return {0, Rational(1, 2)};
    case 1: return {0, mu.loh / 2};
    case 2:
    case 3: return {0, m0 / 2};
    case 4: return {mu.loh, (1 + mu.loh) / 2};
    case 5:
    case 6: return {0, m0 / (1 + m0)};
    case 7: return {mu.scd / (1 + m0), 1 / (1 + m0)};
    case 8: return {0, mu.scd / (1 + m0)};
    case 9: return {2 * mu.sca / (2 + mu.sca), (1 + mu.sca) / (2 + mu.sca)};
    case 10: return {0, m0 / (2 + mu.sca)};
    case 11: return {mu.sca / (2 + mu.sca), 1 / (2 + mu.sca)};
    case 12: return {0, mu.sca / (2 + mu.sca)};
  }
  return {1, 0};
}

// 4. derived frequencies against the allowed-VAF table.
Outcome table_golden() {
  int failures = 0;
  int checks = 0;
  for (int t = 0; t < kCatalogSize; ++t) {
    const CnaClass cls = catalog()[t].cls;
    // Ten class proportions (one for S0) times enough h values for 50 admissible points.
    std::vector<Proportions> mus;
    if (cls == CnaClass::None) {
      mus.push_back(Proportions{});
    } else {
      for (int k = 1; k <= 10; ++k) {
        Proportions mu;
        const Rational v(k, 11);
        (cls == CnaClass::LOH ? mu.loh : cls == CnaClass::SCD ? mu.scd : mu.sca) = v;
        mu.mu0 = 1 - v;
        mus.push_back(mu);
      }
    }
    const int per_mu = 50 / static_cast<int>(mus.size());
    for (const auto& mu : mus) {
      const auto [lo, hi] = table_interval(t, mu);
      if (vaf_interval(t, mu) != std::make_pair(lo, hi)) ++failures;
      // Admissible points.
      for (int j = 0; j < per_mu; ++j) {
        const Rational h = lo + (hi - lo) * Rational(j, per_mu - 1);
        const auto f = derive_frequencies(t, h, mu);
        Rational sum = 0;
        bool nonnegative = true;
        for (const auto& x : f) {
          sum += x;
          nonnegative = nonnegative && x >= 0;
        }
        ++checks;
        if (!nonnegative || sum != 1 || vaf_from_frequencies(f) != h) ++failures;
        const auto obs = to_observables(
            [&] {
              const auto local = to_local(t, f);
              FrequencyTensor ft(1, {static_cast<int>(local.size())});
              for (std::size_t i = 0; i < local.size(); ++i) ft(0, 0, static_cast<int>(i)) = local[i];
              return ft;
            }(),
            {t});
        if (obs[0][0].vaf != h) ++failures;
      }
      // Nonnegativity holds exactly on the table interval: probe just outside it.
      const Rational step = Rational(1, 1000);
      for (const Rational& h : std::vector<Rational>{lo - step, hi + step}) {
        if (h < 0 || h > 1) continue;
        const auto f = derive_frequencies(t, h, mu);
        ++checks;
        if (std::all_of(f.begin(), f.end(), [](const Rational& x) { return x >= 0; })) ++failures;
      }
    }
  }
  return {failures == 0, std::to_string(checks) + " grid checks, " + std::to_string(failures) + " failures"};
}

// 5. usage and mixing invert each other.
Outcome round_trips() {
  int failures = 0;
  std::mt19937_64 rng(5);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const int m = 1 + static_cast<int>(rng() % 5);
    const auto sim = simulate_instance({.n = n, .m = m, .seed = 5000 + i});
    const auto& counts = sim.frequencies.state_counts();
    if (compute_usage(mix(sim.tree, sim.usage, counts), sim.tree, sim.state_trees) != sim.usage) ++failures;
    if (mix(sim.tree, compute_usage(sim.frequencies, sim.tree, sim.state_trees), counts) != sim.frequencies) {
      ++failures;
    }
  }
  return {failures == 0, "100 instances, " + std::to_string(failures) + " failures"};
}

// 6. with read noise, the true tree survives inside a reported tree.
Outcome noisy_containment() {
  int eligible = 0;
  int contained = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto sim = simulate_instance({.n = 4, .m = 5, .coverage = 1000.0, .seed = 3000 + seed});
    const auto& counts = sim.frequencies.state_counts();
    IntervalInstance inst{{StateTable(5, counts), StateTable(5, counts)}, sim.state_trees, sim.names};
    bool inside = true;
    for (int c = 0; c < 4 && inside; ++c) {
      const auto& states = catalog()[sim.tree_ids[c]].states;
      for (int p = 0; p < 5 && inside; ++p) {
        const auto& s = sim.measurements[c].samples[p];
        std::vector<std::pair<Rational, Rational>> iv;
        try {
          iv = derive_frequency_intervals(sim.tree_ids[c], s.vaf_lb, s.vaf_ub, s.mu);
        } catch (const Error&) {
          inside = false;
          break;
        }
        for (std::size_t i = 0; i < states.size(); ++i) {
          const auto& [lo, hi] = iv[states[i]];
          const Rational& truth = sim.frequencies(p, c, static_cast<int>(i));
          if (truth < lo || truth > hi) inside = false;
          inst.intervals.lower(p, c, static_cast<int>(i)) = lo;
          inst.intervals.upper(p, c, static_cast<int>(i)) = hi;
        }
      }
    }
    if (!inside) continue;
    ++eligible;
    const auto set = noisy_enumerate(inst);
    if (std::any_of(set.solutions.begin(), set.solutions.end(),
                    [&](const Solution& s) { return sim.tree.is_subtree_of(s.tree); })) {
      ++contained;
    }
  }
  std::ostringstream d;
  d << contained << "/" << eligible << " eligible seeds contain the true tree";
  return {eligible > 0 && contained == eligible, d.str()};
}

// 7. the SUBSET SUM gadget agrees with dynamic programming.
Outcome subset_sum_gadget() {
  std::mt19937_64 rng(7);
  int agree = 0;
  int feasible = 0;
  int made = 0;
  while (made < 50) {
    const int t = 1 + static_cast<int>(rng() % 8);
    std::set<std::int64_t> values;
    while (static_cast<int>(values.size()) < t) values.insert(1 + static_cast<std::int64_t>(rng() % 20));
    std::vector<std::int64_t> b(values.begin(), values.end());
    std::shuffle(b.begin(), b.end(), rng);
    std::int64_t e = 0;
    for (auto x : b) e += x;
    const std::int64_t lo = *std::max_element(b.begin(), b.end()) + 1;
    if (lo >= e) continue;
    const std::int64_t d = lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(e - lo));
    ++made;
    const bool expected = subset_sum_feasible(b, d);
    feasible += expected;
    const auto inst = subset_sum_instance(b, d);
    const auto g = build_cladistic_graph(inst.frequencies, inst.state_trees);
    const bool got = count_solutions(g, inst.frequencies, inst.state_trees, {.limit = 1}).count > 0;
    agree += got == expected;
  }
  std::ostringstream d;
  d << agree << "/50 agree (" << feasible << " feasible)";
  return {agree == 50, d.str()};
}

// 8. noisy solution counts shrink toward the error-free count.
Outcome noisy_convergence() {
  std::vector<std::size_t> exact;
  std::vector<std::vector<std::size_t>> noisy(3);
  const double coverages[] = {50, 1000, 10000};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SimulationConfig base{.n = 4, .m = 5, .seed = 4000 + seed};
    const auto clean = simulate_instance(base);
    exact.push_back(run_measurements(table_of(clean, 5), {.mode = Mode::Exact}).document.solutions.size());
    for (int k = 0; k < 3; ++k) {
      SimulationConfig cfg = base;
      cfg.coverage = coverages[k];
      const auto sim = simulate_instance(cfg);
      const auto result =
          run_measurements(table_of(sim, 5), {.mode = Mode::Noisy, .largest_only = true});
      noisy[k].push_back(result.document.solutions.size());
    }
  }
  const double e = median(exact);
  const double n50 = median(noisy[0]);
  const double n1000 = median(noisy[1]);
  const double n10000 = median(noisy[2]);
  const bool close = n10000 <= 2 * e && e <= 2 * n10000;
  const bool monotone = n50 >= n1000 && n1000 >= n10000;
  std::ostringstream d;
  d << "median counts: exact " << e << ", 50x " << n50 << ", 1000x " << n1000 << ", 10000x " << n10000;
  return {close && monotone, d.str()};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(PPM_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 9. identical seeds and flags give identical bytes.
Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "ppm_acceptance_determinism";
  fs::remove_all(dir);
  int runs = 0;
  int identical = 0;
  for (const std::string extra : {"", " --coverage 1000"}) {
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path sim = dir / ("sim" + std::to_string(rep));
      if (run_cli("simulate --n 5 --m 3 --seed 99" + extra + " --out-dir " + sim.string()) != 0) {
        return {false, "simulate failed"};
      }
    }
    ++runs;
    identical += read_file((dir / "sim0" / "measurements.tsv").string()) ==
                 read_file((dir / "sim1" / "measurements.tsv").string());
    const std::string input = (dir / "sim0" / "measurements.tsv").string();
    for (const std::string mode : {"exact", "noisy"}) {
      std::vector<std::string> outputs;
      for (const std::string jobs : {"1", "1", "4"}) {
        const fs::path out = dir / ("enum" + std::to_string(outputs.size()));
        if (run_cli("enumerate --input " + input + " --mode " + mode + " --jobs " + jobs +
                    " --out-dir " + out.string()) != 0) {
          return {false, "enumerate failed"};
        }
        outputs.push_back(read_file((out / "solutions.json").string()));
      }
      ++runs;
      identical += outputs[0] == outputs[1] && outputs[1] == outputs[2];
    }
    fs::remove_all(dir);
  }
  return {identical == runs, std::to_string(identical) + "/" + std::to_string(runs) + " repeated runs byte-identical"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", oracle_equivalence},
      {2, "ground-truth recovery", ground_truth_recovery},
      {3, "ambiguity trend", ambiguity_trend},
      {4, "table golden tests", table_golden},
      {5, "round trips", round_trips},
      {6, "noisy containment", noisy_containment},
      {7, "subset sum gadget", subset_sum_gadget},
      {8, "noisy convergence", noisy_convergence},
      {9, "determinism", determinism},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      wanted.insert(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: " << argv[0] << " [--criterion N]...\n";
      return 2;
    }
  }
  bool all = true;
  for (const auto& c : criteria) {
    if (!wanted.empty() && !wanted.contains(c.id)) continue;
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d %s: %s (%s; %.1f s)\n", c.id, c.name, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
