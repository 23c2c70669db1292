#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppm/cna_model.hpp"
#include "ppm/core.hpp"
#include "ppm/enumeration.hpp"

namespace ppm {

/// Tensor file: point frequencies ("f") or intervals ("f_lb"/"f_ub").
struct TensorDocument {
  std::vector<std::string> names;
  StateTreeSet state_trees;
  std::optional<FrequencyTensor> frequencies;
  std::optional<FrequencyIntervalTensor> intervals;
  /// Global label of every local state, when the file carries them.
  std::vector<std::vector<int>> state_labels;
  int num_samples() const;
};

/// Throws Error(Parse) on malformed text and the validation errors of the
/// tensor types.
TensorDocument parse_tensor_json(std::string_view text);
std::string write_tensor_json(const TensorDocument& doc);

struct MeasurementTable {
  std::vector<std::string> samples;
  std::vector<LocusMeasurement> loci;
};

/// Tab-separated columns sample_id, locus_id, vaf, vaf_lb, vaf_ub, mu0, muLOH,
/// muSCD, muSCA with a header row. Throws Error(Parse).
MeasurementTable parse_measurements_tsv(std::string_view text);
std::string write_measurements_tsv(const MeasurementTable& table);

struct Truth {
  std::vector<std::string> names;
  std::vector<int> tree_ids;
  /// (locus, global state) labels.
  CloneTree tree;
  /// Columns follow tree.vertices().
  std::optional<UsageMatrix> usage;
};

Truth parse_truth_json(std::string_view text);
std::string write_truth_json(const Truth& truth);

/// One solution as stored on disk, with (locus, global state) labels.
struct StoredSolution {
  std::string combination;
  CloneTree tree;
  std::optional<UsageMatrix> usage;
  /// witness[p][k] over the kept characters' states in `witness_states`.
  std::vector<std::vector<std::vector<Rational>>> witness;
  std::vector<std::vector<int>> witness_states;
  std::vector<int> witness_loci;
};

struct StoredCombination {
  std::string id;
  std::vector<int> tree_ids;
  std::vector<int> loci;
  std::size_t solutions = 0;
  bool truncated = false;
};

struct SolutionDocument {
  std::string mode;
  bool truncated = false;
  std::vector<std::string> names;
  std::vector<int> dropped;
  std::vector<StoredCombination> combinations;
  std::vector<StoredSolution> solutions;
};

SolutionDocument parse_solutions_json(std::string_view text);
std::string write_solutions_json(const SolutionDocument& doc);

/// Rows are samples, columns the usage columns ("root", "name:state").
std::string write_usage_tsv(const UsageMatrix& usage, const std::vector<std::string>& names);

/// Vertex text "root" or "c:s" and back.
std::string vertex_text(CharStatePair v);
CharStatePair parse_vertex(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace ppm
