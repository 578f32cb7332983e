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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "phaseflow/error.hpp"
#include "phaseflow/evolve.hpp"
#include "phaseflow/graph.hpp"
#include "phaseflow/hamiltonian.hpp"
#include "phaseflow/report.hpp"
#include "phaseflow/spectral.hpp"
#include "phaseflow/tracking.hpp"

namespace fs = std::filesystem;
using namespace phaseflow;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& o) {
  std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << "  " << name << "  "
            << o.detail << std::endl;
  if (!o.pass) ++failures;
}

void run_criterion(int id, const std::string& name, const std::function<Outcome()>& body) {
  try {
    report(id, name, body());
  } catch (const std::exception& e) {
    report(id, name, {false, std::string("exception: ") + e.what()});
  }
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

// Summaries are shared between criteria so each (instance, K) pair runs once.
class RunCache {
 public:
  const RunSummary& get(const std::string& preset, int steps) {
    auto key = std::make_pair(preset, steps);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    RunConfig cfg;
    cfg.graph = {GraphSource::Kind::kPreset, preset};
    cfg.steps = steps;
    const auto start = Clock::now();
    RunSummary s = run_experiment(cfg);
    std::cout << "      run " << preset << " K=" << steps << ": p_succ=" << fmt(s.p_succ)
              << " median=" << fmt(s.median_dtheta_min) << " max=" << fmt(s.max_dtheta_min)
              << " cycles=" << s.nontrivial_cycle_count
              << " min_overlap=" << fmt(s.min_assignment_overlap) << " (" << fmt(seconds_since(start))
              << " s)" << std::endl;
    return cache_.emplace(key, s).first->second;
  }

 private:
  std::map<std::pair<std::string, int>, RunSummary> cache_;
};

Graph random_graph(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> vertices(1, 8);
  std::bernoulli_distribution coin(0.5);
  const int n = vertices(rng);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.push_back({u, v});
    }
  }
  return Graph::create(n, std::move(edges));
}

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20261015);
  int mismatches = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = random_graph(rng);
    const CostDiagonal diag = cost_diagonal(g);
    const double top = *std::max_element(diag.values.begin(), diag.values.end());
    const auto mult = static_cast<std::size_t>(std::count(diag.values.begin(), diag.values.end(), top));
    const CutOracleResult oracle = brute_force_optimum(g);
    if (top != oracle.c_star || mult != oracle.degeneracy) ++mismatches;
  }
  const double elapsed = seconds_since(start);
  return {mismatches == 0 && elapsed < 10.0,
          "mismatches=" + std::to_string(mismatches) + " time=" + fmt(elapsed) + "s"};
}

Outcome unitarity_and_reconstruction() {
  double worst_unitarity = 0.0, worst_reconstruction = 0.0;
  std::size_t snapshots = 0, fixes = 0;
  for (const char* preset : {"k2", "n5e6", "n7e8"}) {
    const Graph g = preset_instance(preset);
    Schedule schedule{.steps = 160, .total_time = 50.0};
    auto result = evolve_streaming(g, schedule, [&](SpectralSnapshot&& snap, const ComplexMatrix& u) {
      worst_unitarity = std::max(worst_unitarity, unitarity_residual(u));
      worst_reconstruction = std::max(worst_reconstruction, reconstruction_residual(u, snap));
      ++snapshots;
    });
    // Residuals measured before any re-unitarization are part of the diagnostics.
    worst_unitarity = std::max(worst_unitarity, result.diagnostics.max_unitarity_residual);
    fixes += result.diagnostics.reunitarizations;
  }
  return {worst_unitarity <= 1e-9 && worst_reconstruction <= 1e-8 && fixes == 0,
          "snapshots=" + std::to_string(snapshots) + " max_unitarity=" + fmt(worst_unitarity) +
              " max_reconstruction=" + fmt(worst_reconstruction) +
              " reunitarizations=" + std::to_string(fixes)};
}

Outcome success_despite_degeneracy(RunCache& runs) {
  const RunSummary& a = runs.get("n5e6", 240);
  const RunSummary& b = runs.get("n7e8", 240);
  const bool shapes = a.vertices == 5 && a.edges == 6 && a.degeneracy == 2 && b.vertices == 7 &&
                      b.edges == 8 && b.degeneracy == 4;
  return {shapes && a.p_succ >= 0.95 && b.p_succ >= 0.95,
          "n5e6 p_succ=" + fmt(a.p_succ) + " n7e8 p_succ=" + fmt(b.p_succ)};
}

Outcome crowding_scale_separation(RunCache& runs) {
  const double small = runs.get("n5e6", 240).median_dtheta_min;
  const double large = runs.get("n10e25", 240).median_dtheta_min;
  const double ratio = large / small;
  return {ratio <= 0.1, "median n10e25=" + fmt(large) + " n5e6=" + fmt(small) +
                            " ratio=" + fmt(ratio)};
}

Outcome digitization_robustness(RunCache& runs) {
  bool pass = true;
  std::string detail;
  for (const char* preset : {"n5e6", "n7e8", "n10e25"}) {
    const double coarse = runs.get(preset, 160).median_dtheta_min;
    const double fine = runs.get(preset, 500).median_dtheta_min;
    const double factor = std::max(coarse, fine) / std::min(coarse, fine);
    pass = pass && coarse > 0.0 && fine > 0.0 && factor <= 2.0;
    detail += std::string(preset) + " K160=" + fmt(coarse) + " K500=" + fmt(fine) +
              " factor=" + fmt(factor) + "  ";
  }
  return {pass, detail};
}

Outcome nontrivial_reordering(RunCache& runs, const fs::path& workdir) {
  bool pass = true;
  std::string detail;
  for (const char* preset : {"n5e6", "n7e8", "n10e25"}) {
    const RunSummary& s = runs.get(preset, 240);
    const bool ok = s.nontrivial_cycle_count >= 1 && s.min_assignment_overlap > 0.5;
    pass = pass && ok;
    detail += std::string(preset) + " cycles=" + std::to_string(s.nontrivial_cycle_count) +
              " min_overlap=" + fmt(s.min_assignment_overlap) + "  ";
  }

  RunConfig empty;
  empty.graph = {GraphSource::Kind::kInline, "n 3"};
  empty.steps = 240;
  empty.output_dir = workdir / "empty_graph";
  fs::remove_all(empty.output_dir);
  run_experiment(empty);
  std::ifstream in(empty.output_dir / "permutation.json");
  std::stringstream text;
  text << in.rdbuf();
  const bool emitted = text.str().find("\"terminal_cluster\"") != std::string::npos &&
                       text.str().find("\"continuity_violations\"") != std::string::npos;
  pass = pass && emitted;
  detail += std::string("empty_graph_diagnostics=") + (emitted ? "yes" : "no");
  return {pass, detail};
}

Outcome tracking_properties() {
  const auto start = Clock::now();
  bool pass = true;
  std::string detail;

  RealMatrix adversarial(2, 2);
  adversarial << 0.9, 0.8, 0.8, 0.1;
  const double optimal = assignment_total(adversarial, assign_bands(adversarial));
  const double greedy = assignment_total(adversarial, greedy_assign(adversarial));
  pass = pass && std::abs(optimal - 1.6) < 1e-12 && std::abs(greedy - 1.0) < 1e-12;
  detail += "hungarian=" + fmt(optimal) + " greedy=" + fmt(greedy);

  const Graph g = preset_instance("n5e6");
  auto run = run_evolution(g, Schedule{.steps = 60, .total_time = 50.0, .snapshot_stride = 3});
  std::vector<SpectralSnapshot> doubled;
  for (const auto& snap : run.snapshots) {
    doubled.push_back(snap);
    doubled.push_back(snap);
  }
  const Permutation once = end_to_end_permutation(track_bands(run.snapshots)).pi;
  const Permutation twice = end_to_end_permutation(track_bands(doubled)).pi;
  pass = pass && once == twice;
  detail += std::string(" duplicated_idempotent=") + (once == twice ? "yes" : "no");

  std::vector<SpectralSnapshot> identity_run;
  const ComplexMatrix id = ComplexMatrix::Identity(16, 16);
  for (int k = 1; k <= 10; ++k) {
    SpectralSnapshot snap = eigendecompose_unitary(id);
    snap.step = k;
    snap.s = k / 10.0;
    identity_run.push_back(std::move(snap));
  }
  const bool identity = end_to_end_permutation(track_bands(identity_run)).pi.is_identity();
  pass = pass && identity;
  detail += std::string(" identity_evolution=") + (identity ? "identity" : "not identity");

  const double elapsed = seconds_since(start);
  pass = pass && elapsed < 1.0;
  detail += " time=" + fmt(elapsed) + "s";
  return {pass, detail};
}

Outcome circular_gap_properties() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_int_distribution<int> count(2, 64);
  double worst_sum = 0.0, worst_rotation = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> phases(static_cast<std::size_t>(count(rng)));
    for (double& p : phases) p = angle(rng);
    std::sort(phases.begin(), phases.end());
    double sum = 0.0;
    for (double gap : circular_gaps(phases)) sum += gap;
    worst_sum = std::max(worst_sum, std::abs(sum - 2.0 * std::numbers::pi));

    const double shift = angle(rng);
    std::vector<double> rotated;
    for (double p : phases) rotated.push_back(wrap_phase(p + shift));
    std::sort(rotated.begin(), rotated.end());
    worst_rotation =
        std::max(worst_rotation, std::abs(delta_theta_min(rotated) - delta_theta_min(phases)));
  }
  return {worst_sum <= 1e-10 && worst_rotation <= 1e-12,
          "max_sum_error=" + fmt(worst_sum) + " max_rotation_error=" + fmt(worst_rotation)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome reproducibility(const fs::path& cli, const fs::path& workdir) {
  const fs::path base = workdir / "repro";
  fs::remove_all(base);
  fs::create_directories(base);
  const fs::path config = base / "run.ini";
  std::ofstream(config) << "preset = n5e6\nk = 120\nt = 50\nshots = 2000\nseed = 11\n";

  std::vector<fs::path> outs{base / "a", base / "b"};
  for (const auto& out : outs) {
    const std::string cmd = "\"" + cli.string() + "\" --config \"" + config.string() +
                            "\" --out \"" + out.string() + "\" evolve > \"" +
                            (out.string() + ".stdout") + "\"";
    if (std::system(cmd.c_str()) != 0) return {false, "cli invocation failed: " + cmd};
  }
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(outs[0])) {
    const fs::path other = outs[1] / entry.path().filename();
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
      return {false, "differs: " + entry.path().filename().string()};
    }
    ++files;
  }
  const bool stdout_same = slurp(outs[0].string() + ".stdout") == slurp(outs[1].string() + ".stdout");
  return {files >= 5 && stdout_same,
          "identical_files=" + std::to_string(files) + (stdout_same ? " stdout identical" : " stdout differs")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phaseflow acceptance suite"};
  fs::path cli;
  fs::path workdir = fs::temp_directory_path() / "phaseflow_acceptance";
  app.add_option("--cli", cli, "Path to the phaseflow executable")->required();
  app.add_option("--workdir", workdir, "Scratch directory for run outputs");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(workdir);

  RunCache runs;
  run_criterion(1, "oracle equivalence", oracle_equivalence);
  run_criterion(2, "unitarity and reconstruction", unitarity_and_reconstruction);
  run_criterion(3, "success despite degeneracy", [&] { return success_despite_degeneracy(runs); });
  run_criterion(4, "crowding scale separation", [&] { return crowding_scale_separation(runs); });
  run_criterion(5, "digitization robustness", [&] { return digitization_robustness(runs); });
  run_criterion(6, "nontrivial reordering", [&] { return nontrivial_reordering(runs, workdir); });
  run_criterion(7, "tracking properties", tracking_properties);
  run_criterion(8, "circular gap properties", circular_gap_properties);
  run_criterion(9, "reproducibility", [&] { return reproducibility(cli, workdir); });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
