// Copyright 2026 The Phaseflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phaseflow/evolve.hpp"
#include "phaseflow/graph.hpp"
#include "phaseflow/spectral.hpp"
#include "phaseflow/tracking.hpp"

namespace phaseflow {

struct GraphSource {
  enum class Kind { kFile, kInline, kPreset };
  Kind kind = Kind::kPreset;
  /// A path, edge-list text (';' may stand in for newlines) or a preset name.
  std::string value;
};

Graph load_graph(const GraphSource& source, int max_vertices = kDefaultMaxVertices);

struct RunConfig {
  GraphSource graph;
  int steps = 160;
  double total_time = 50.0;
  double mixer_scale = 5.0;
  /// Unset selects Schedule::default_stride.
  std::optional<int> snapshot_stride;
  /// Empty: no files are written.
  std::filesystem::path output_dir;
  /// When set, a sampled histogram (samples.csv) is written as well.
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
  int max_vertices = kDefaultMaxVertices;

  /// Throws Error("config") on K < 1, T <= 0, or stride < 1.
  void validate() const;
  Schedule schedule() const;
};

/// One row of the run-level summary table.
struct RunSummary {
  int vertices = 0;
  std::size_t edges = 0;
  int steps = 0;
  double total_time = 0.0;
  double mixer_scale = 0.0;
  int snapshot_stride = 0;
  std::size_t snapshot_count = 0;
  int c_star = 0;
  std::size_t degeneracy = 0;
  double p_succ = 0.0;
  double median_dtheta_min = 0.0;
  double max_dtheta_min = 0.0;
  std::size_t nontrivial_cycle_count = 0;
  /// Smallest per-step assignment overlap over the whole run.
  double min_assignment_overlap = 0.0;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

std::string summary_to_json(const RunSummary& summary);
/// Throws Error("report") on missing or mistyped fields.
RunSummary summary_from_json(const std::string& text);

/// Everything a run produces, before serialization.
struct ExperimentArtifacts {
  explicit ExperimentArtifacts(Graph g) : graph(std::move(g)) {}

  Graph graph;
  Schedule schedule;
  CutOracleResult oracle;
  EvolutionResult evolution;  // snapshots are streamed, not retained
  CrowdingSeries crowding;
  BandTrack track;
  PermutationResult permutation;
  TerminalClusterReport terminal;
  std::optional<std::vector<std::uint64_t>> sample_counts;
  RunSummary summary;
};

/// oracle -> evolution -> crowding -> band tracking -> permutation.
ExperimentArtifacts run_pipeline(const Graph& g, const RunConfig& config);

/// Loads the graph, runs the pipeline and, when config.output_dir is set,
/// writes the output files there.
RunSummary run_experiment(const RunConfig& config);

/// Writes phases.csv, crowding.csv, histogram.csv, permutation.json,
/// summary.json and, with sampling, samples.csv. Throws Error("io").
void emit_outputs(const ExperimentArtifacts& artifacts, const std::filesystem::path& out_dir);

/// One experiment per K; each writes into out_dir/K<k>/ and the combined
/// table goes to out_dir/sweep.csv. Up to `jobs` runs execute at once.
std::vector<RunSummary> run_sweep(const RunConfig& base, std::span<const int> step_counts,
                                  int jobs = 1);

std::string sweep_table_csv(std::span<const RunSummary> rows);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Multinomial sample of `shots` outcomes by inverse-CDF lookup on a
/// mt19937_64 stream; counts are indexed by basis state.
std::vector<std::uint64_t> sample_outcomes(std::span<const double> distribution,
                                           std::uint64_t shots, std::uint64_t seed);

std::string permutation_json(const ExperimentArtifacts& artifacts);

}  // namespace phaseflow
