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

// Command-line front end: `solve`, `evolve` and `sweep`.

#include <charconv>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "phaseflow/error.hpp"
#include "phaseflow/graph.hpp"
#include "phaseflow/report.hpp"

namespace {

struct Options {
  std::string graph_path;
  std::string preset;
  std::string edges;
  int steps = 160;
  double total_time = 50.0;
  double mixer_scale = 5.0;
  int stride = 0;
  std::string out;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::string sweep;
  int jobs = 0;
  int max_vertices = phaseflow::kDefaultMaxVertices;
};

phaseflow::GraphSource graph_source(const Options& o) {
  const int given = !o.graph_path.empty() + !o.preset.empty() + !o.edges.empty();
  if (given != 1) {
    throw phaseflow::Error("config", "exactly one of --graph, --preset, --edges is required");
  }
  if (!o.graph_path.empty()) return {phaseflow::GraphSource::Kind::kFile, o.graph_path};
  if (!o.preset.empty()) return {phaseflow::GraphSource::Kind::kPreset, o.preset};
  return {phaseflow::GraphSource::Kind::kInline, o.edges};
}

phaseflow::RunConfig run_config(const Options& o, const CLI::App& app) {
  phaseflow::RunConfig cfg;
  cfg.graph = graph_source(o);
  cfg.steps = o.steps;
  cfg.total_time = o.total_time;
  cfg.mixer_scale = o.mixer_scale;
  if (app.count("--stride") > 0) cfg.snapshot_stride = o.stride;
  cfg.output_dir = o.out;
  if (app.count("--shots") > 0) cfg.shots = o.shots;
  cfg.seed = o.seed;
  cfg.max_vertices = o.max_vertices;
  return cfg;
}

std::vector<int> parse_sweep(const std::string& text) {
  std::vector<int> ks;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    int k = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    auto [ptr, ec] = std::from_chars(first, last, k);
    if (ec != std::errc{} || ptr != last) {
      throw phaseflow::Error("config", "bad --sweep entry '" + std::string(first, last) + "'");
    }
    ks.push_back(k);
    pos = end + 1;
  }
  return ks;
}

int run_solve(const Options& o) {
  const phaseflow::Graph g = phaseflow::load_graph(graph_source(o), o.max_vertices);
  const auto oracle = phaseflow::brute_force_optimum(g, o.max_vertices);
  nlohmann::ordered_json j;
  j["n"] = g.vertex_count();
  j["edges"] = g.edge_count();
  j["c_star"] = oracle.c_star;
  j["degeneracy"] = oracle.degeneracy;
  j["optimal_set"] = oracle.optimal_set;
  std::cout << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral-flow diagnostics for digitized adiabatic MaxCut evolution"};
  app.set_config("--config", "", "Read 'key = value' options from a file; flags override it");
  app.require_subcommand(1);

  Options o;
  app.add_option("--graph", o.graph_path, "Edge-list file");
  app.add_option("--preset", o.preset, "Built-in instance: k2, k3, c5, n5e6, n7e8, n10e25");
  app.add_option("--edges", o.edges, "Inline edge list, ';' separating lines");
  app.add_option("--k", o.steps, "Trotter steps K")->capture_default_str();
  app.add_option("--t", o.total_time, "Total evolution time T")->capture_default_str();
  app.add_option("--mixer-scale", o.mixer_scale, "Mixer rotation scale")->capture_default_str();
  app.add_option("--stride", o.stride, "Snapshot stride (default max(1, K/100))");
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--shots", o.shots, "Also write a sampled histogram with this many shots");
  app.add_option("--seed", o.seed, "Sampling seed")->capture_default_str();
  app.add_option("--sweep", o.sweep, "Comma-separated K values (sweep only)");
  app.add_option("--jobs", o.jobs, "Concurrent runs in a sweep (default: hardware threads)");
  app.add_option("--max-vertices", o.max_vertices, "Largest accepted graph")->capture_default_str();

  auto* solve = app.add_subcommand("solve", "Brute-force MaxCut optimum and degeneracy");
  auto* evolve = app.add_subcommand("evolve", "Full pipeline for one K; writes --out files");
  auto* sweep = app.add_subcommand("sweep", "Full pipeline for each K in --sweep");
  for (auto* sub : {solve, evolve, sweep}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(o);
    if (evolve->parsed()) {
      const auto summary = phaseflow::run_experiment(run_config(o, app));
      std::cout << phaseflow::summary_to_json(summary);
      return 0;
    }
    if (o.sweep.empty()) throw phaseflow::Error("config", "sweep requires --sweep K1,K2,...");
    const auto ks = parse_sweep(o.sweep);
    const int jobs = o.jobs > 0 ? o.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const auto rows = phaseflow::run_sweep(run_config(o, app), ks, jobs);
    std::cout << phaseflow::sweep_table_csv(rows);
    return 0;
  } catch (const phaseflow::Error& e) {
    std::cerr << "phaseflow: error " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "phaseflow: error [internal] " << e.what() << '\n';
  }
  return 1;
}
