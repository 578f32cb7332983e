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

#include <algorithm>
#include <functional>
#include <span>
#include <vector>

#include "phaseflow/graph.hpp"
#include "phaseflow/linalg.hpp"
#include "phaseflow/spectral.hpp"

namespace phaseflow {

/// Linear digitized schedule: for steps l = 1..K, s_l = l/K,
/// beta_l = (1 - s_l) dt and gamma_l = s_l dt with dt = T/K.
struct Schedule {
  int steps = 1;
  double total_time = 1.0;
  double mixer_scale = 5.0;
  /// Snapshot every `snapshot_stride` steps; 0 selects default_stride(steps).
  int snapshot_stride = 0;

  static int default_stride(int steps) { return std::max(1, steps / 100); }

  double dt() const { return total_time / steps; }
  int stride() const { return snapshot_stride > 0 ? snapshot_stride : default_stride(steps); }
  /// Throws Error("evolve") unless K >= 1, T > 0 and finite, stride >= 0.
  void validate() const;
};

struct StepParams {
  double s = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

StepParams schedule_params(const Schedule& schedule, int step);

/// Steps at which snapshots are recorded: every multiple of the stride,
/// plus step 1 and step K. Ascending, no duplicates.
std::vector<int> snapshot_steps(const Schedule& schedule);

/// Uniform superposition over all 2^n basis states.
StateVector initial_state(int qubits);

struct EvolveOptions {
  EigenOptions eigen;
  /// Cumulative products whose unitarity residual exceeds this are
  /// re-unitarized before being decomposed.
  double reunitarize_threshold = 1e-9;
  int max_vertices = kDefaultMaxVertices;
};

struct EvolutionDiagnostics {
  /// Largest unitarity residual seen at a snapshot, after any correction.
  double max_unitarity_residual = 0.0;
  int reunitarizations = 0;
  /// max |psi_incremental - U_K psi_0|
  double state_consistency_residual = 0.0;
};

struct EvolutionResult {
  std::vector<SpectralSnapshot> snapshots;
  StateVector final_state;
  std::vector<double> outcome_distribution;
  EvolutionDiagnostics diagnostics;
};

/// Receives each snapshot together with the cumulative unitary it was
/// computed from. Called in step order.
using SnapshotVisitor = std::function<void(SpectralSnapshot&&, const ComplexMatrix& cumulative)>;

/// Runs the schedule and hands every snapshot to `visitor` instead of
/// retaining it; EvolutionResult::snapshots is left empty. Peak memory is a
/// few 2^n x 2^n matrices regardless of K.
EvolutionResult evolve_streaming(const Graph& g, const Schedule& schedule,
                                 const SnapshotVisitor& visitor, const EvolveOptions& options = {});

/// Runs the schedule and retains every snapshot.
EvolutionResult run_evolution(const Graph& g, const Schedule& schedule,
                              const EvolveOptions& options = {});

/// Sum of the outcome distribution over the oracle's optimal basis states.
double success_probability(const EvolutionResult& result, const CutOracleResult& oracle);
double success_probability(std::span<const double> distribution, const CutOracleResult& oracle);

}  // namespace phaseflow
