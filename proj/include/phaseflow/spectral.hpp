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

#include <cstddef>
#include <span>
#include <vector>

#include "phaseflow/linalg.hpp"

namespace phaseflow {

/// Eigen-decomposition of a cumulative unitary at one interpolation point.
/// phases are sorted ascending in (-pi, pi]; column j of `vectors` is the
/// unit eigenvector for phases[j].
struct SpectralSnapshot {
  std::size_t step = 0;
  double s = 0.0;
  std::vector<double> phases;
  ComplexMatrix vectors;

  std::size_t size() const noexcept { return phases.size(); }
};

struct EigenOptions {
  /// Inputs with max|U^dagger U - I| above this are rejected.
  double unitarity_tolerance = 1e-9;
  /// Eigenvectors whose phases lie within this circular distance are
  /// re-orthonormalized as one cluster.
  double cluster_tolerance = 1e-10;
  /// Skip the input check when the caller has already verified unitarity.
  bool verify_unitarity = true;
};

/// Full eigendecomposition of a unitary matrix.
///
/// The unitary is rotated so that the widest gap of its spectrum sits at -1
/// and then mapped through the Cayley transform H = i (I - V)(I + V)^{-1},
/// which is Hermitian with eigenvalues tan(phi/2). A Hermitian eigensolver
/// then yields orthonormal eigenvectors directly; the phase map is monotone,
/// so nearby eigenphases are never folded onto each other. The widest gap is
/// located from the spectrum of (U + U^dagger)/2, whose eigenvalues cos(theta)
/// pin every eigenphase to one of +-acos(c).
///
/// Throws Error("spectral") for non-unitary input or solver failure.
SpectralSnapshot eigendecompose_unitary(const ComplexMatrix& u, const EigenOptions& options = {});

/// Maps to (-pi, pi]; -pi itself becomes +pi.
double wrap_phase(double theta);
double circular_distance(double a, double b);

/// Gaps between consecutive sorted phases followed by the wrap-around gap
/// phases.front() + 2 pi - phases.back(). Sums to 2 pi.
std::vector<double> circular_gaps(std::span<const double> sorted_phases);

/// Minimum circular gap. Throws for fewer than two phases.
double delta_theta_min(std::span<const double> sorted_phases);
double delta_theta_min(const SpectralSnapshot& snapshot);

struct CrowdingPoint {
  double s = 0.0;
  double dtheta_min = 0.0;
};

struct CrowdingSeries {
  std::vector<CrowdingPoint> points;
  double median = 0.0;
  double max = 0.0;
};

CrowdingSeries crowding_series(std::span<const SpectralSnapshot> snapshots);
/// Computes median (mean of the central pair for even counts) and max.
/// Throws for an empty series.
CrowdingSeries summarize_crowding(std::vector<CrowdingPoint> points);

/// max_j || U v_j - e^{i theta_j} v_j ||_2
double reconstruction_residual(const ComplexMatrix& u, const SpectralSnapshot& snapshot);
/// max_{ij} |(V^dagger V - I)_{ij}|
double orthonormality_residual(const SpectralSnapshot& snapshot);

}  // namespace phaseflow
