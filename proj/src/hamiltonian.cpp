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

#include "phaseflow/hamiltonian.hpp"

#include <cmath>
#include <string>

#include "phaseflow/error.hpp"

namespace phaseflow {

namespace {

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw Error("hamiltonian", std::string(name) + " must be finite");
}

}  // namespace

double unitarity_residual(const ComplexMatrix& u) {
  ComplexMatrix gram = u.adjoint() * u;
  gram.diagonal().array() -= Complex(1.0, 0.0);
  return gram.cwiseAbs().maxCoeff();
}

CostDiagonal cost_diagonal(const Graph& g) {
  CostDiagonal cost;
  cost.values.resize(g.dimension());
  for (std::size_t b = 0; b < g.dimension(); ++b) {
    cost.values[b] = cut_value(g, static_cast<BasisIndex>(b));
  }
  return cost;
}

MixerLayer::MixerLayer(int qubits, double angle)
    : qubits_(qubits), cos_half_(std::cos(angle / 2)), sin_half_(std::sin(angle / 2)) {
  require_finite(angle, "mixer angle");
  if (qubits < 1) throw Error("hamiltonian", "qubit count must be positive");
}

void MixerLayer::apply(Eigen::Ref<ComplexMatrix> target) const {
  const Eigen::Index dim = Eigen::Index{1} << qubits_;
  if (target.rows() != dim) throw Error("hamiltonian", "mixer dimension mismatch");
  const Complex c(cos_half_, 0.0);
  const Complex ms(0.0, -sin_half_);
  for (Eigen::Index col = 0; col < target.cols(); ++col) {
    Complex* amp = target.col(col).data();
    for (int q = 0; q < qubits_; ++q) {
      const Eigen::Index bit = Eigen::Index{1} << q;
      for (Eigen::Index base = 0; base < dim; base += 2 * bit) {
        for (Eigen::Index b = base; b < base + bit; ++b) {
          const Complex a0 = amp[b];
          const Complex a1 = amp[b + bit];
          amp[b] = c * a0 + ms * a1;
          amp[b + bit] = ms * a0 + c * a1;
        }
      }
    }
  }
}

ComplexMatrix MixerLayer::dense() const {
  const Eigen::Index dim = Eigen::Index{1} << qubits_;
  ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
  apply(m);
  return m;
}

CostPhaseLayer::CostPhaseLayer(const Graph& g, double gamma) {
  require_finite(gamma, "gamma");
  const double edges = static_cast<double>(g.edge_count());
  phases_.resize(static_cast<Eigen::Index>(g.dimension()));
  for (std::size_t b = 0; b < g.dimension(); ++b) {
    // sum over edges of s_i s_j = |E| - 2 * cut(b)
    const double spin_sum = edges - 2.0 * cut_value(g, static_cast<BasisIndex>(b));
    phases_[static_cast<Eigen::Index>(b)] = std::polar(1.0, gamma * spin_sum);
  }
}

void CostPhaseLayer::apply(Eigen::Ref<ComplexMatrix> target) const {
  if (target.rows() != phases_.size()) throw Error("hamiltonian", "cost dimension mismatch");
  target.array().colwise() *= phases_.array();
}

ComplexMatrix CostPhaseLayer::dense() const { return phases_.asDiagonal(); }

StepOperator::StepOperator(const Graph& g, double beta, double gamma, double mixer_scale)
    : mixer_(g.vertex_count(), mixer_scale * beta), cost_(g, gamma) {
  require_finite(beta, "beta");
  require_finite(mixer_scale, "mixer scale");
}

void StepOperator::apply(Eigen::Ref<ComplexMatrix> target) const {
  mixer_.apply(target);
  cost_.apply(target);
}

ComplexMatrix StepOperator::dense() const {
  ComplexMatrix m = mixer_.dense();
  cost_.apply(m);
  return m;
}

ComplexMatrix mixer_layer(int qubits, double angle) { return MixerLayer(qubits, angle).dense(); }

ComplexMatrix cost_phase_layer(const Graph& g, double gamma) {
  return CostPhaseLayer(g, gamma).dense();
}

ComplexMatrix step_unitary(const Graph& g, double beta, double gamma, double mixer_scale) {
  return StepOperator(g, beta, gamma, mixer_scale).dense();
}

}  // namespace phaseflow
