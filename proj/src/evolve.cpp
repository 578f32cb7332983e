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

#include "phaseflow/evolve.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include <Eigen/QR>

#include "phaseflow/error.hpp"
#include "phaseflow/hamiltonian.hpp"

namespace phaseflow {

namespace {

// Nearest unitary in the QR sense: Q with the phases of diag(R) folded in.
void reunitarize(ComplexMatrix& u) {
  Eigen::HouseholderQR<ComplexMatrix> qr(u);
  ComplexMatrix q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    const double magnitude = std::abs(r(j, j));
    if (magnitude > 0.0) q.col(j) *= r(j, j) / magnitude;
  }
  u = std::move(q);
}

}  // namespace

void Schedule::validate() const {
  if (steps < 1) throw Error("evolve", "step count K must be at least 1");
  if (!(total_time > 0.0) || !std::isfinite(total_time)) {
    throw Error("evolve", "total time T must be positive and finite");
  }
  if (!std::isfinite(mixer_scale)) throw Error("evolve", "mixer scale must be finite");
  if (snapshot_stride < 0) throw Error("evolve", "snapshot stride must be positive");
}

StepParams schedule_params(const Schedule& schedule, int step) {
  if (step < 1 || step > schedule.steps) {
    throw Error("evolve", "step " + std::to_string(step) + " outside 1.." +
                              std::to_string(schedule.steps));
  }
  StepParams p;
  p.s = step == schedule.steps ? 1.0 : static_cast<double>(step) / schedule.steps;
  p.beta = (1.0 - p.s) * schedule.dt();
  p.gamma = p.s * schedule.dt();
  return p;
}

std::vector<int> snapshot_steps(const Schedule& schedule) {
  schedule.validate();
  const int stride = schedule.stride();
  std::vector<int> steps{1};
  for (int l = stride; l <= schedule.steps; l += stride) {
    if (l != steps.back()) steps.push_back(l);
  }
  if (steps.back() != schedule.steps) steps.push_back(schedule.steps);
  return steps;
}

StateVector initial_state(int qubits) {
  if (qubits < 1) throw Error("evolve", "qubit count must be positive");
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  return StateVector::Constant(dim, Complex(std::pow(2.0, -0.5 * qubits), 0.0));
}

EvolutionResult evolve_streaming(const Graph& g, const Schedule& schedule,
                                 const SnapshotVisitor& visitor, const EvolveOptions& options) {
  schedule.validate();
  if (g.vertex_count() > options.max_vertices) {
    throw Error("evolve", "vertex count " + std::to_string(g.vertex_count()) +
                              " exceeds maximum " + std::to_string(options.max_vertices));
  }
  const Eigen::Index dim = static_cast<Eigen::Index>(g.dimension());
  const auto recorded = snapshot_steps(schedule);
  EigenOptions eigen = options.eigen;
  eigen.verify_unitarity = false;  // checked below, before decomposition

  EvolutionResult result;
  ComplexMatrix cumulative = ComplexMatrix::Identity(dim, dim);
  const StateVector psi0 = initial_state(g.vertex_count());
  StateVector psi = psi0;
  std::size_t next = 0;

  for (int l = 1; l <= schedule.steps; ++l) {
    const StepParams p = schedule_params(schedule, l);
    const StepOperator step(g, p.beta, p.gamma, schedule.mixer_scale);
    step.apply(cumulative);
    step.apply(psi);

    if (next < recorded.size() && recorded[next] == l) {
      ++next;
      if (!cumulative.allFinite()) {
        throw Error("evolve", "non-finite amplitudes at step " + std::to_string(l));
      }
      double residual = unitarity_residual(cumulative);
      if (residual > options.reunitarize_threshold) {
        std::clog << "phaseflow: re-unitarizing cumulative product at step " << l
                  << " (residual " << residual << ")\n";
        reunitarize(cumulative);
        ++result.diagnostics.reunitarizations;
        residual = unitarity_residual(cumulative);
      }
      result.diagnostics.max_unitarity_residual =
          std::max(result.diagnostics.max_unitarity_residual, residual);
      SpectralSnapshot snap = eigendecompose_unitary(cumulative, eigen);
      snap.step = static_cast<std::size_t>(l);
      snap.s = p.s;
      if (visitor) visitor(std::move(snap), cumulative);
    }
  }

  result.final_state = cumulative * psi0;
  if (!result.final_state.allFinite()) throw Error("evolve", "non-finite final state");
  result.diagnostics.state_consistency_residual = (psi - result.final_state).cwiseAbs().maxCoeff();
  result.outcome_distribution.resize(static_cast<std::size_t>(dim));
  for (Eigen::Index b = 0; b < dim; ++b) {
    result.outcome_distribution[static_cast<std::size_t>(b)] = std::norm(result.final_state[b]);
  }
  return result;
}

EvolutionResult run_evolution(const Graph& g, const Schedule& schedule,
                              const EvolveOptions& options) {
  std::vector<SpectralSnapshot> snapshots;
  EvolutionResult result = evolve_streaming(
      g, schedule,
      [&](SpectralSnapshot&& snap, const ComplexMatrix&) { snapshots.push_back(std::move(snap)); },
      options);
  result.snapshots = std::move(snapshots);
  return result;
}

double success_probability(std::span<const double> distribution, const CutOracleResult& oracle) {
  double total = 0.0;
  for (BasisIndex b : oracle.optimal_indices) {
    if (b >= distribution.size()) throw Error("evolve", "optimal index outside distribution");
    total += distribution[b];
  }
  return total;
}

double success_probability(const EvolutionResult& result, const CutOracleResult& oracle) {
  return success_probability(result.outcome_distribution, oracle);
}

}  // namespace phaseflow
