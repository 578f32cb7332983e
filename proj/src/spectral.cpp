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

#include "phaseflow/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "phaseflow/error.hpp"

namespace phaseflow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Midpoint of the widest circular gap of the eigenphases of u.
double widest_gap_midpoint(const ComplexMatrix& u) {
  const ComplexMatrix hermitian_part = 0.5 * (u + u.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error("spectral", "eigenvalue solver failed while locating spectral gap");
  }
  std::vector<double> candidates;
  candidates.reserve(2 * static_cast<std::size_t>(u.rows()));
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const double angle = std::acos(std::clamp(solver.eigenvalues()[k], -1.0, 1.0));
    candidates.push_back(wrap_phase(angle));
    candidates.push_back(wrap_phase(-angle));
  }
  std::sort(candidates.begin(), candidates.end());
  const auto gaps = circular_gaps(candidates);
  const auto widest = static_cast<std::size_t>(
      std::distance(gaps.begin(), std::max_element(gaps.begin(), gaps.end())));
  return wrap_phase(candidates[widest] + 0.5 * gaps[widest]);
}

void orthonormalize_columns(ComplexMatrix& vectors, const std::vector<Eigen::Index>& columns) {
  for (std::size_t a = 0; a < columns.size(); ++a) {
    auto col = vectors.col(columns[a]);
    for (std::size_t b = 0; b < a; ++b) {
      auto prev = vectors.col(columns[b]);
      col -= prev.dot(col) * prev;
    }
    col.normalize();
  }
}

// Re-orthonormalizes every run of phases closer than `tolerance`, including
// runs that straddle the branch cut.
void orthonormalize_clusters(SpectralSnapshot& snap, double tolerance) {
  const std::size_t n = snap.phases.size();
  if (n < 2) return;
  std::vector<std::vector<Eigen::Index>> clusters;
  clusters.push_back({0});
  for (std::size_t j = 1; j < n; ++j) {
    if (snap.phases[j] - snap.phases[j - 1] < tolerance) {
      clusters.back().push_back(static_cast<Eigen::Index>(j));
    } else {
      clusters.push_back({static_cast<Eigen::Index>(j)});
    }
  }
  if (clusters.size() > 1 && snap.phases.front() + kTwoPi - snap.phases.back() < tolerance) {
    auto& last = clusters.back();
    last.insert(last.end(), clusters.front().begin(), clusters.front().end());
    clusters.erase(clusters.begin());
  }
  for (const auto& cluster : clusters) {
    if (cluster.size() > 1) orthonormalize_columns(snap.vectors, cluster);
  }
}

}  // namespace

double wrap_phase(double theta) {
  double wrapped = std::remainder(theta, kTwoPi);
  if (wrapped <= -kPi) wrapped += kTwoPi;
  return wrapped;
}

double circular_distance(double a, double b) { return std::abs(std::remainder(a - b, kTwoPi)); }

SpectralSnapshot eigendecompose_unitary(const ComplexMatrix& u, const EigenOptions& options) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw Error("spectral", "eigendecomposition requires a non-empty square matrix");
  }
  if (!u.allFinite()) throw Error("spectral", "matrix contains non-finite entries");
  if (options.verify_unitarity) {
    const double residual = unitarity_residual(u);
    if (!(residual <= options.unitarity_tolerance)) {
      throw Error("spectral",
                  "matrix is not unitary (residual " + std::to_string(residual) + ")");
    }
  }

  const Eigen::Index dim = u.rows();
  SpectralSnapshot snap;
  if (dim == 1) {
    snap.phases = {wrap_phase(std::arg(u(0, 0)))};
    snap.vectors = ComplexMatrix::Identity(1, 1);
    return snap;
  }

  // Rotate so the widest gap is centred on -1, then take the Cayley transform.
  const double shift = wrap_phase(widest_gap_midpoint(u) + kPi);
  const ComplexMatrix rotated = std::polar(1.0, -shift) * u;
  const ComplexMatrix identity = ComplexMatrix::Identity(dim, dim);
  Eigen::PartialPivLU<ComplexMatrix> lu(identity + rotated);
  ComplexMatrix cayley = Complex(0.0, 1.0) * lu.solve(identity - rotated);
  cayley = 0.5 * (cayley + cayley.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(cayley);
  if (solver.info() != Eigen::Success) {
    throw Error("spectral", "Hermitian eigensolver did not converge");
  }

  std::vector<double> phases(static_cast<std::size_t>(dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    phases[static_cast<std::size_t>(k)] =
        wrap_phase(shift + 2.0 * std::atan(solver.eigenvalues()[k]));
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return phases[static_cast<std::size_t>(a)] < phases[static_cast<std::size_t>(b)];
  });

  snap.phases.resize(static_cast<std::size_t>(dim));
  snap.vectors.resize(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    snap.phases[static_cast<std::size_t>(j)] = phases[static_cast<std::size_t>(order[j])];
    snap.vectors.col(j) = solver.eigenvectors().col(order[j]);
  }
  orthonormalize_clusters(snap, options.cluster_tolerance);
  return snap;
}

std::vector<double> circular_gaps(std::span<const double> sorted_phases) {
  std::vector<double> gaps;
  if (sorted_phases.empty()) return gaps;
  gaps.reserve(sorted_phases.size());
  for (std::size_t j = 1; j < sorted_phases.size(); ++j) {
    gaps.push_back(std::max(0.0, sorted_phases[j] - sorted_phases[j - 1]));
  }
  gaps.push_back(std::max(0.0, sorted_phases.front() + kTwoPi - sorted_phases.back()));
  return gaps;
}

double delta_theta_min(std::span<const double> sorted_phases) {
  if (sorted_phases.size() < 2) {
    throw Error("spectral", "minimum phase gap needs at least two phases");
  }
  const auto gaps = circular_gaps(sorted_phases);
  return *std::min_element(gaps.begin(), gaps.end());
}

double delta_theta_min(const SpectralSnapshot& snapshot) { return delta_theta_min(snapshot.phases); }

CrowdingSeries crowding_series(std::span<const SpectralSnapshot> snapshots) {
  std::vector<CrowdingPoint> points;
  points.reserve(snapshots.size());
  for (const auto& snap : snapshots) points.push_back({snap.s, delta_theta_min(snap)});
  return summarize_crowding(std::move(points));
}

CrowdingSeries summarize_crowding(std::vector<CrowdingPoint> points) {
  if (points.empty()) throw Error("spectral", "crowding series is empty");
  std::vector<double> values;
  values.reserve(points.size());
  for (const auto& p : points) values.push_back(p.dtheta_min);
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  CrowdingSeries series;
  series.median = values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  series.max = values.back();
  series.points = std::move(points);
  return series;
}

double reconstruction_residual(const ComplexMatrix& u, const SpectralSnapshot& snapshot) {
  const ComplexMatrix image = u * snapshot.vectors;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < image.cols(); ++j) {
    const Complex eigenvalue = std::polar(1.0, snapshot.phases[static_cast<std::size_t>(j)]);
    worst = std::max(worst, (image.col(j) - eigenvalue * snapshot.vectors.col(j)).norm());
  }
  return worst;
}

double orthonormality_residual(const SpectralSnapshot& snapshot) {
  return unitarity_residual(snapshot.vectors);
}

}  // namespace phaseflow
