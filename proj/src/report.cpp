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

#include "phaseflow/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

#include "json.hpp"
#include "phaseflow/error.hpp"

namespace phaseflow {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("io", "cannot open " + path.string() + " for writing");
  out << contents;
  if (!out.flush()) throw Error("io", "failed writing " + path.string());
}

std::string crowding_csv(const CrowdingSeries& crowding) {
  std::string out = "s,dtheta_min\n";
  for (const auto& p : crowding.points) {
    out += format_double(p.s) + ',' + format_double(p.dtheta_min) + '\n';
  }
  return out;
}

std::string phases_csv(const BandTrack& track) {
  std::string out = "s,band_index,theta\n";
  for (Eigen::Index k = 0; k < track.trajectories.cols(); ++k) {
    const std::string s = format_double(track.s[static_cast<std::size_t>(k)]);
    for (Eigen::Index b = 0; b < track.trajectories.rows(); ++b) {
      out += s + ',' + std::to_string(b) + ',' + format_double(track.trajectories(b, k)) + '\n';
    }
  }
  return out;
}

std::string histogram_csv(const ExperimentArtifacts& a) {
  std::vector<char> optimal(a.graph.dimension(), 0);
  for (BasisIndex b : a.oracle.optimal_indices) optimal[b] = 1;
  std::string out = "bitstring,probability,cut_value,is_optimal\n";
  for (std::size_t b = 0; b < a.graph.dimension(); ++b) {
    const auto index = static_cast<BasisIndex>(b);
    out += to_bitstring(index, a.graph.vertex_count()) + ',' +
           format_double(a.evolution.outcome_distribution[b]) + ',' +
           std::to_string(cut_value(a.graph, index)) + ',' + (optimal[b] ? "1" : "0") + '\n';
  }
  return out;
}

std::string samples_csv(const ExperimentArtifacts& a) {
  std::string out = "bitstring,count\n";
  for (std::size_t b = 0; b < a.sample_counts->size(); ++b) {
    out += to_bitstring(static_cast<BasisIndex>(b), a.graph.vertex_count()) + ',' +
           std::to_string((*a.sample_counts)[b]) + '\n';
  }
  return out;
}

ordered_json cycles_json(const std::vector<std::vector<int>>& cycles) {
  ordered_json out = ordered_json::array();
  for (const auto& c : cycles) out.push_back(c);
  return out;
}

template <typename T>
T require_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw Error("report", std::string("summary is missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error("report", std::string("summary field '") + key + "': " + e.what());
  }
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) throw Error("report", "failed to format number");
  return std::string(buffer, end);
}

Graph load_graph(const GraphSource& source, int max_vertices) {
  switch (source.kind) {
    case GraphSource::Kind::kFile:
      return parse_edge_list(read_file(source.value), max_vertices);
    case GraphSource::Kind::kInline: {
      std::string text = source.value;
      std::replace(text.begin(), text.end(), ';', '\n');
      return parse_edge_list(text, max_vertices);
    }
    case GraphSource::Kind::kPreset:
      break;
  }
  return preset_instance(source.value);
}

void RunConfig::validate() const {
  if (steps < 1) throw Error("config", "K must be at least 1");
  if (!(total_time > 0.0) || !std::isfinite(total_time)) throw Error("config", "T must be positive");
  if (!std::isfinite(mixer_scale)) throw Error("config", "mixer scale must be finite");
  if (snapshot_stride && *snapshot_stride < 1) throw Error("config", "stride must be at least 1");
}

Schedule RunConfig::schedule() const {
  Schedule s;
  s.steps = steps;
  s.total_time = total_time;
  s.mixer_scale = mixer_scale;
  s.snapshot_stride = snapshot_stride.value_or(0);
  return s;
}

std::string summary_to_json(const RunSummary& r) {
  ordered_json j;
  j["n"] = r.vertices;
  j["edges"] = r.edges;
  j["K"] = r.steps;
  j["T"] = r.total_time;
  j["mixer_scale"] = r.mixer_scale;
  j["snapshot_stride"] = r.snapshot_stride;
  j["snapshot_count"] = r.snapshot_count;
  j["c_star"] = r.c_star;
  j["degeneracy"] = r.degeneracy;
  j["p_succ"] = r.p_succ;
  j["median_dtheta_min"] = r.median_dtheta_min;
  j["max_dtheta_min"] = r.max_dtheta_min;
  j["nontrivial_cycle_count"] = r.nontrivial_cycle_count;
  j["min_assignment_overlap"] = r.min_assignment_overlap;
  return j.dump(2) + '\n';
}

RunSummary summary_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error("report", std::string("summary is not valid JSON: ") + e.what());
  }
  RunSummary r;
  r.vertices = require_field<int>(j, "n");
  r.edges = require_field<std::size_t>(j, "edges");
  r.steps = require_field<int>(j, "K");
  r.total_time = require_field<double>(j, "T");
  r.mixer_scale = require_field<double>(j, "mixer_scale");
  r.snapshot_stride = require_field<int>(j, "snapshot_stride");
  r.snapshot_count = require_field<std::size_t>(j, "snapshot_count");
  r.c_star = require_field<int>(j, "c_star");
  r.degeneracy = require_field<std::size_t>(j, "degeneracy");
  r.p_succ = require_field<double>(j, "p_succ");
  r.median_dtheta_min = require_field<double>(j, "median_dtheta_min");
  r.max_dtheta_min = require_field<double>(j, "max_dtheta_min");
  r.nontrivial_cycle_count = require_field<std::size_t>(j, "nontrivial_cycle_count");
  r.min_assignment_overlap = require_field<double>(j, "min_assignment_overlap");
  return r;
}

std::vector<std::uint64_t> sample_outcomes(std::span<const double> distribution,
                                           std::uint64_t shots, std::uint64_t seed) {
  std::vector<double> cdf(distribution.size());
  double total = 0.0;
  for (std::size_t b = 0; b < distribution.size(); ++b) {
    total += std::max(0.0, distribution[b]);
    cdf[b] = total;
  }
  if (!(total > 0.0)) throw Error("report", "cannot sample from an empty distribution");
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> counts(distribution.size(), 0);
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++counts[static_cast<std::size_t>(it - cdf.begin())];
  }
  return counts;
}

ExperimentArtifacts run_pipeline(const Graph& g, const RunConfig& config) {
  config.validate();
  ExperimentArtifacts a(g);
  a.schedule = config.schedule();
  a.oracle = brute_force_optimum(g, config.max_vertices);

  EvolveOptions options;
  options.max_vertices = config.max_vertices;
  std::vector<CrowdingPoint> crowding;
  BandTracker tracker;
  a.evolution = evolve_streaming(
      g, a.schedule,
      [&](SpectralSnapshot&& snap, const ComplexMatrix&) {
        crowding.push_back({snap.s, delta_theta_min(snap)});
        tracker.push(std::move(snap));
      },
      options);
  a.crowding = summarize_crowding(std::move(crowding));

  if (tracker.snapshot_count() >= 2) {
    a.track = tracker.finish();
  } else {
    // K = 1: a single snapshot, nothing to connect.
    const SpectralSnapshot& only = *tracker.last_snapshot();
    a.track.band_count = only.size();
    a.track.s = {only.s};
    a.track.trajectories = Eigen::Map<const Eigen::VectorXd>(
        only.phases.data(), static_cast<Eigen::Index>(only.size()));
    a.track.composed = Permutation::identity(only.size());
    a.track.first_phases = only.phases;
    a.track.last_phases = only.phases;
  }
  a.permutation = end_to_end_permutation(a.track);
  a.terminal = terminal_cluster(a.track, *tracker.last_snapshot(), a.oracle.optimal_indices);

  if (config.shots) {
    a.sample_counts = sample_outcomes(a.evolution.outcome_distribution, *config.shots, config.seed);
  }

  RunSummary& r = a.summary;
  r.vertices = g.vertex_count();
  r.edges = g.edge_count();
  r.steps = a.schedule.steps;
  r.total_time = a.schedule.total_time;
  r.mixer_scale = a.schedule.mixer_scale;
  r.snapshot_stride = a.schedule.stride();
  r.snapshot_count = a.crowding.points.size();
  r.c_star = a.oracle.c_star;
  r.degeneracy = a.oracle.degeneracy;
  r.p_succ = success_probability(a.evolution, a.oracle);
  r.median_dtheta_min = a.crowding.median;
  r.max_dtheta_min = a.crowding.max;
  r.nontrivial_cycle_count = a.permutation.nontrivial_cycle_count;
  r.min_assignment_overlap =
      a.track.min_overlaps.empty()
          ? 1.0
          : *std::min_element(a.track.min_overlaps.begin(), a.track.min_overlaps.end());
  return a;
}

RunSummary run_experiment(const RunConfig& config) {
  config.validate();
  const Graph g = load_graph(config.graph, config.max_vertices);
  const ExperimentArtifacts artifacts = run_pipeline(g, config);
  if (!config.output_dir.empty()) emit_outputs(artifacts, config.output_dir);
  return artifacts.summary;
}

std::string permutation_json(const ExperimentArtifacts& a) {
  ordered_json j;
  j["band_count"] = a.track.band_count;
  j["step_min_overlaps"] = a.track.min_overlaps;
  j["greedy_disagreements"] = a.track.greedy_disagreements;
  j["min_assignment_overlap"] = a.summary.min_assignment_overlap;
  j["continuity_threshold"] = a.track.continuity_threshold;
  j["continuity_violations"] = a.track.continuity_violations;
  j["max_phase_jump"] = a.track.max_phase_jump;
  j["pi"] = a.permutation.pi.image();
  j["cycles"] = cycles_json(a.permutation.cycles);
  j["nontrivial_cycle_count"] = a.permutation.nontrivial_cycle_count;
  ordered_json terminal;
  terminal["projection_threshold"] = a.terminal.projection_threshold;
  terminal["final_columns"] = a.terminal.final_columns;
  terminal["initial_slots"] = a.terminal.initial_slots;
  terminal["slot_count"] = a.terminal.initial_slots.size();
  terminal["pi"] = a.terminal.sub_permutation.pi.image();
  terminal["cycles"] = cycles_json(a.terminal.sub_permutation.cycles);
  terminal["nontrivial_cycle_count"] = a.terminal.sub_permutation.nontrivial_cycle_count;
  j["terminal_cluster"] = std::move(terminal);
  return j.dump(2) + '\n';
}

void emit_outputs(const ExperimentArtifacts& a, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error("io", "cannot create " + out_dir.string() + ": " + ec.message());
  write_file(out_dir / "phases.csv", phases_csv(a.track));
  write_file(out_dir / "crowding.csv", crowding_csv(a.crowding));
  write_file(out_dir / "histogram.csv", histogram_csv(a));
  write_file(out_dir / "permutation.json", permutation_json(a));
  write_file(out_dir / "summary.json", summary_to_json(a.summary));
  if (a.sample_counts) write_file(out_dir / "samples.csv", samples_csv(a));
}

std::string sweep_table_csv(std::span<const RunSummary> rows) {
  std::string out =
      "n,edges,K,c_star,degeneracy,p_succ,median_dtheta_min,max_dtheta_min,"
      "nontrivial_cycle_count,min_assignment_overlap\n";
  for (const auto& r : rows) {
    out += std::to_string(r.vertices) + ',' + std::to_string(r.edges) + ',' +
           std::to_string(r.steps) + ',' + std::to_string(r.c_star) + ',' +
           std::to_string(r.degeneracy) + ',' + format_double(r.p_succ) + ',' +
           format_double(r.median_dtheta_min) + ',' + format_double(r.max_dtheta_min) + ',' +
           std::to_string(r.nontrivial_cycle_count) + ',' +
           format_double(r.min_assignment_overlap) + '\n';
  }
  return out;
}

std::vector<RunSummary> run_sweep(const RunConfig& base, std::span<const int> step_counts,
                                  int jobs) {
  base.validate();
  if (step_counts.empty()) throw Error("config", "sweep needs at least one K");
  const Graph g = load_graph(base.graph, base.max_vertices);
  jobs = std::max(1, jobs);

  auto run_one = [&g, &base](int steps) {
    RunConfig cfg = base;
    cfg.steps = steps;
    const ExperimentArtifacts artifacts = run_pipeline(g, cfg);
    if (!base.output_dir.empty()) {
      emit_outputs(artifacts, base.output_dir / ("K" + std::to_string(steps)));
    }
    return artifacts.summary;
  };

  std::vector<RunSummary> rows(step_counts.size());
  std::deque<std::pair<std::size_t, std::future<RunSummary>>> in_flight;
  for (std::size_t i = 0; i < step_counts.size(); ++i) {
    if (static_cast<int>(in_flight.size()) == jobs) {
      rows[in_flight.front().first] = in_flight.front().second.get();
      in_flight.pop_front();
    }
    in_flight.emplace_back(i, std::async(std::launch::async, run_one, step_counts[i]));
  }
  for (auto& [index, future] : in_flight) rows[index] = future.get();

  if (!base.output_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(base.output_dir, ec);
    write_file(base.output_dir / "sweep.csv", sweep_table_csv(rows));
  }
  return rows;
}

}  // namespace phaseflow
