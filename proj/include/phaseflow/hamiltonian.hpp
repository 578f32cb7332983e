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

#include <vector>

#include "phaseflow/graph.hpp"
#include "phaseflow/linalg.hpp"

namespace phaseflow {

/// Diagonal of the cost operator: values[b] is the cut value of basis state b.
struct CostDiagonal {
  std::vector<double> values;
};

CostDiagonal cost_diagonal(const Graph& g);

/// Product of single-qubit X rotations RX(angle) on every qubit, with
/// RX(phi) = [[cos(phi/2), -i sin(phi/2)], [-i sin(phi/2), cos(phi/2)]].
class MixerLayer {
 public:
  MixerLayer(int qubits, double angle);

  /// In place: rows of `target` are amplitudes, every column is rotated.
  void apply(Eigen::Ref<ComplexMatrix> target) const;
  ComplexMatrix dense() const;

  int qubits() const noexcept { return qubits_; }

 private:
  int qubits_;
  double cos_half_;
  double sin_half_;
};

/// Product over edges (i, j) of the ZZ phase gate RZZ(-2 gamma), where
/// RZZ(phi) multiplies basis state b by exp(-i (phi/2) s_i(b) s_j(b)) with
/// s = +1 for bit 0 and -1 for bit 1. Stored as its diagonal.
class CostPhaseLayer {
 public:
  CostPhaseLayer(const Graph& g, double gamma);

  void apply(Eigen::Ref<ComplexMatrix> target) const;
  ComplexMatrix dense() const;
  const StateVector& diagonal() const noexcept { return phases_; }

 private:
  StateVector phases_;
};

/// One digitized step: mixer rotations first, then cost phases, i.e. the
/// matrix CostPhaseLayer * MixerLayer(mixer_scale * beta).
class StepOperator {
 public:
  StepOperator(const Graph& g, double beta, double gamma, double mixer_scale);

  void apply(Eigen::Ref<ComplexMatrix> target) const;
  ComplexMatrix dense() const;

 private:
  MixerLayer mixer_;
  CostPhaseLayer cost_;
};

ComplexMatrix mixer_layer(int qubits, double angle);
ComplexMatrix cost_phase_layer(const Graph& g, double gamma);
ComplexMatrix step_unitary(const Graph& g, double beta, double gamma, double mixer_scale);

}  // namespace phaseflow
