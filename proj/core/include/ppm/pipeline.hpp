#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ppm/cna_model.hpp"
#include "ppm/enumeration.hpp"
#include "ppm/io.hpp"

namespace ppm {

struct PipelineOptions {
  Mode mode = Mode::Exact;
  /// Per-combination limit and cap on the merged output.
  std::optional<std::size_t> max_solutions;
  /// Keep only trees with the largest vertex count over all combinations.
  bool largest_only = false;
  /// Worker threads; 0 means PPM_JOBS or the hardware concurrency.
  int jobs = 0;
};

struct CombinationRun {
  Combination combination;
  SolutionSet solutions;  // local labels
  AncestryGraph graph;
};

struct PipelineResult {
  Mode mode = Mode::Exact;
  std::vector<std::string> names;
  std::vector<int> dropped;
  std::vector<CombinationRun> runs;
  /// Merged, relabelled, filtered and deduplicated output.
  SolutionDocument document;
};

/// One instance per combination of compatible catalog trees.
PipelineResult run_measurements(const MeasurementTable& table, const PipelineOptions& options);

/// A single instance read from a tensor file; the mode follows the file.
PipelineResult run_tensor(const TensorDocument& doc, const PipelineOptions& options);

/// Jobs from the option, then PPM_JOBS, then the hardware.
int resolve_jobs(int requested);

/// Calls work(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& work);

}  // namespace ppm
