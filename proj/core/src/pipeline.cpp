#include "ppm/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace ppm {

namespace {

StoredSolution store(const CombinationRun& run, const Solution& s, const std::string& id) {
  const Combination& comb = run.combination;
  StoredSolution out;
  out.combination = id;
  std::vector<Edge> edges;
  for (const auto& e : s.tree.edges()) edges.push_back({comb.to_global(e.parent), comb.to_global(e.child)});
  out.tree = CloneTree(std::move(edges));
  if (s.usage) {
    std::vector<CharStatePair> columns;
    for (const auto v : s.usage->columns()) columns.push_back(comb.to_global(v));
    // Relabelling keeps the root first but can reorder the others.
    std::vector<std::size_t> order(columns.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return columns[a] < columns[b]; });
    std::vector<CharStatePair> sorted;
    for (auto k : order) sorted.push_back(columns[k]);
    UsageMatrix usage(s.usage->num_samples(), sorted);
    for (int p = 0; p < usage.num_samples(); ++p) {
      for (std::size_t k = 0; k < order.size(); ++k) usage(p, static_cast<int>(k)) = (*s.usage)(p, static_cast<int>(order[k]));
    }
    out.usage = std::move(usage);
  }
  if (s.witness) {
    const FrequencyTensor& w = *s.witness;
    out.witness_loci = comb.loci;
    for (std::size_t k = 0; k < comb.loci.size(); ++k) {
      std::vector<int> states;
      for (int i = 0; i < w.num_states(static_cast<int>(k)); ++i) {
        states.push_back(comb.to_global(CharStatePair{static_cast<int>(k), i}).state);
      }
      out.witness_states.push_back(std::move(states));
    }
    for (int p = 0; p < w.num_samples(); ++p) {
      std::vector<std::vector<Rational>> sample;
      for (int c = 0; c < w.num_characters(); ++c) {
        const auto row = w.row(p, c);
        sample.emplace_back(row.begin(), row.end());
      }
      out.witness.push_back(std::move(sample));
    }
  }
  return out;
}

void run_one(CombinationRun& run, Mode mode, const PipelineOptions& options) {
  EnumerateOptions eo;
  eo.limit = options.max_solutions;
  const Combination& c = run.combination;
  if (mode == Mode::Exact) {
    run.graph = build_cladistic_graph(c.frequencies, c.state_trees);
    run.solutions = enumerate(run.graph, c.frequencies, c.state_trees, eo);
  } else {
    run.graph = build_cladistic_graph(c.intervals, c.state_trees);
    run.solutions = noisy_enumerate(run.graph, c.intervals, c.state_trees, eo);
  }
}

PipelineResult finish(PipelineResult result, const PipelineOptions& options) {
  parallel_for(result.runs.size(), resolve_jobs(options.jobs),
               [&](std::size_t k) { run_one(result.runs[k], result.mode, options); });

  SolutionDocument& doc = result.document;
  doc.mode = result.mode == Mode::Exact ? "exact" : "noisy";
  doc.names = result.names;
  doc.dropped = result.dropped;
  std::size_t largest = 0;
  for (const auto& run : result.runs) {
    for (const auto& s : run.solutions.solutions) largest = std::max(largest, s.tree.num_vertices());
  }
  std::set<CloneTree> seen;
  for (const auto& run : result.runs) {
    const std::string id = run.combination.id();
    doc.combinations.push_back({id, run.combination.tree_ids, run.combination.loci, run.solutions.size(),
                                run.solutions.truncated});
    doc.truncated = doc.truncated || run.solutions.truncated;
    for (const auto& s : run.solutions.solutions) {
      if (options.largest_only && s.tree.num_vertices() != largest) continue;
      StoredSolution stored = store(run, s, id);
      if (!seen.insert(stored.tree).second) continue;
      doc.solutions.push_back(std::move(stored));
    }
  }
  if (options.max_solutions && doc.solutions.size() > *options.max_solutions) {
    doc.solutions.resize(*options.max_solutions);
    doc.truncated = true;
  }
  return result;
}

}  // namespace

int resolve_jobs(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PPM_JOBS")) {
    const int value = std::atoi(env);
    if (value > 0) return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& work) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) work(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      while (true) {
        const std::size_t k = next.fetch_add(1);
        if (k >= count) return;
        try {
          work(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

PipelineResult run_measurements(const MeasurementTable& table, const PipelineOptions& options) {
  PipelineResult result;
  result.mode = options.mode;
  for (const auto& locus : table.loci) result.names.push_back(locus.name);
  CombinationSet set = combinations(table.loci, options.mode);
  result.dropped = set.dropped;
  for (auto& comb : set.combinations) result.runs.push_back({std::move(comb), {}, {}});
  return finish(std::move(result), options);
}

PipelineResult run_tensor(const TensorDocument& doc, const PipelineOptions& options) {
  PipelineResult result;
  result.mode = options.mode;
  result.names = doc.names;
  Combination comb;
  for (std::size_t c = 0; c < doc.state_trees.size(); ++c) {
    comb.loci.push_back(static_cast<int>(c));
    comb.tree_ids.push_back(-1);
    if (doc.state_labels.empty()) {
      std::vector<int> identity(static_cast<std::size_t>(doc.state_trees[c].num_states()));
      for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = static_cast<int>(i);
      comb.labels.push_back(std::move(identity));
    } else {
      comb.labels.push_back(doc.state_labels[c]);
    }
  }
  comb.state_trees = doc.state_trees;
  comb.names = doc.names;
  if (options.mode == Mode::Exact) {
    if (!doc.frequencies) throw Error(ErrorKind::InvalidConfig, "exact mode needs point frequencies ('f')");
    comb.frequencies = *doc.frequencies;
  } else {
    comb.intervals = doc.intervals ? *doc.intervals : point_intervals(*doc.frequencies);
  }
  result.runs.push_back({std::move(comb), {}, {}});
  return finish(std::move(result), options);
}

}  // namespace ppm
