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
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "gtest/gtest.h"
#include "phaseflow/error.hpp"
#include "phaseflow/hamiltonian.hpp"

namespace phaseflow {
namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  return qr.householderQ();
}

// Unitary with prescribed eigenphases in a random eigenbasis.
ComplexMatrix with_phases(const std::vector<double>& phases, std::mt19937_64& rng) {
  const auto n = static_cast<Eigen::Index>(phases.size());
  ComplexMatrix basis = random_unitary(n, rng);
  Eigen::VectorXcd diag(n);
  for (Eigen::Index k = 0; k < n; ++k) diag[k] = std::polar(1.0, phases[static_cast<std::size_t>(k)]);
  return basis * diag.asDiagonal() * basis.adjoint();
}

std::vector<double> sorted_wrapped(std::vector<double> phases) {
  for (double& p : phases) p = wrap_phase(p);
  std::sort(phases.begin(), phases.end());
  return phases;
}

// Independent route: eigenvalues from a complex Schur form.
std::vector<double> schur_phases(const ComplexMatrix& u) {
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  std::vector<double> phases;
  for (Eigen::Index k = 0; k < u.rows(); ++k) phases.push_back(std::arg(schur.matrixT()(k, k)));
  return sorted_wrapped(phases);
}

TEST(WrapPhaseTest, HalfOpenInterval) {
  EXPECT_DOUBLE_EQ(wrap_phase(kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_phase(-kPi), kPi);
  EXPECT_NEAR(wrap_phase(3 * kPi / 2), -kPi / 2, 1e-15);
  EXPECT_NEAR(wrap_phase(-7.0), -7.0 + 2 * kPi, 1e-15);
  EXPECT_NEAR(circular_distance(kPi - 0.1, -kPi + 0.1), 0.2, 1e-14);
}

TEST(EigendecomposeTest, Identity) {
  SpectralSnapshot snap = eigendecompose_unitary(ComplexMatrix::Identity(8, 8));
  for (double p : snap.phases) EXPECT_EQ(p, 0.0);
  EXPECT_LT((snap.vectors.cwiseAbs() - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff(),
            1e-14);
}

TEST(EigendecomposeTest, BranchCutKeepsPlusPi) {
  ComplexMatrix u = ComplexMatrix::Zero(2, 2);
  u(0, 0) = 1.0;
  u(1, 1) = -1.0;
  SpectralSnapshot snap = eigendecompose_unitary(u);
  EXPECT_NEAR(snap.phases[0], 0.0, 1e-14);
  EXPECT_NEAR(snap.phases[1], kPi, 1e-14);
  EXPECT_GT(snap.phases[1], 0.0);
}

TEST(EigendecomposeTest, RotationByPi) {
  SpectralSnapshot snap = eigendecompose_unitary(mixer_layer(1, kPi));
  EXPECT_NEAR(snap.phases[0], -kPi / 2, 1e-14);
  EXPECT_NEAR(snap.phases[1], kPi / 2, 1e-14);
}

TEST(EigendecomposeTest, OneByOne) {
  ComplexMatrix u(1, 1);
  u(0, 0) = std::polar(1.0, 0.7);
  SpectralSnapshot snap = eigendecompose_unitary(u);
  EXPECT_NEAR(snap.phases[0], 0.7, 1e-15);
}

TEST(EigendecomposeTest, RandomUnitariesAgreeWithSchur) {
  std::mt19937_64 rng(17);
  for (Eigen::Index n : {2, 5, 16, 64}) {
    ComplexMatrix u = random_unitary(n, rng);
    SpectralSnapshot snap = eigendecompose_unitary(u);
    EXPECT_TRUE(std::is_sorted(snap.phases.begin(), snap.phases.end()));
    for (double p : snap.phases) {
      EXPECT_GT(p, -kPi);
      EXPECT_LE(p, kPi);
    }
    EXPECT_LE(reconstruction_residual(u, snap), 1e-8);
    EXPECT_LE(orthonormality_residual(snap), 1e-8);
    auto reference = schur_phases(u);
    for (std::size_t k = 0; k < reference.size(); ++k) {
      EXPECT_LT(circular_distance(snap.phases[k], reference[k]), 1e-10) << n << ' ' << k;
    }
  }
}

TEST(EigendecomposeTest, DegenerateClustersStayOrthonormal) {
  std::mt19937_64 rng(23);
  std::vector<double> phases{0.4, 0.4, 0.4, -2.0, -2.0, kPi, kPi, 1.3, -kPi + 1e-12, 2.9};
  ComplexMatrix u = with_phases(phases, rng);
  SpectralSnapshot snap = eigendecompose_unitary(u);
  EXPECT_LE(reconstruction_residual(u, snap), 1e-8);
  EXPECT_LE(orthonormality_residual(snap), 1e-10);
  // The cluster straddling the branch cut may land at either end of the
  // sorted order, so compare multiplicities within a circular window.
  for (double p : phases) {
    auto near = [p](double q) { return circular_distance(p, q) < 1e-9; };
    EXPECT_EQ(std::count_if(snap.phases.begin(), snap.phases.end(), near),
              std::count_if(phases.begin(), phases.end(), near))
        << p;
  }
}

TEST(EigendecomposeTest, RejectsNonUnitary) {
  ComplexMatrix u = ComplexMatrix::Identity(3, 3);
  u(0, 1) = 1e-6;
  EXPECT_THROW(eigendecompose_unitary(u), Error);
  EXPECT_THROW(eigendecompose_unitary(ComplexMatrix(2, 3)), Error);
}

TEST(EigendecomposeTest, GlobalPhaseShiftsEverything) {
  std::mt19937_64 rng(29);
  ComplexMatrix u = random_unitary(12, rng);
  const double delta = 1.234;
  SpectralSnapshot a = eigendecompose_unitary(u);
  SpectralSnapshot b = eigendecompose_unitary(std::polar(1.0, delta) * u);
  std::vector<double> shifted;
  for (double p : a.phases) shifted.push_back(p + delta);
  shifted = sorted_wrapped(shifted);
  for (std::size_t k = 0; k < shifted.size(); ++k) {
    EXPECT_LT(circular_distance(b.phases[k], shifted[k]), 1e-10);
  }
  EXPECT_NEAR(delta_theta_min(a), delta_theta_min(b), 1e-10);
}

TEST(DeltaThetaMinTest, Examples) {
  EXPECT_EQ(delta_theta_min(std::vector<double>{0.3, 0.3, 1.0}), 0.0);
  EXPECT_DOUBLE_EQ(delta_theta_min(std::vector<double>{0.0, kPi}), kPi);
  EXPECT_DOUBLE_EQ(delta_theta_min(std::vector<double>{-kPi / 2, 0.0, kPi}), kPi / 2);
  EXPECT_THROW(delta_theta_min(std::vector<double>{0.1}), Error);
}

TEST(DeltaThetaMinTest, CircularGapProperties) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_int_distribution<int> count(2, 64);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> phases(static_cast<std::size_t>(count(rng)));
    for (double& p : phases) p = wrap_phase(angle(rng));
    std::sort(phases.begin(), phases.end());
    auto gaps = circular_gaps(phases);
    double sum = 0.0;
    for (double gap : gaps) sum += gap;
    EXPECT_NEAR(sum, 2 * kPi, 1e-10);
    const double base = delta_theta_min(phases);
    EXPECT_LE(base, 2 * kPi / static_cast<double>(phases.size()) + 1e-15);

    const double offset = angle(rng);
    std::vector<double> rotated;
    for (double p : phases) rotated.push_back(p + offset);
    EXPECT_NEAR(delta_theta_min(sorted_wrapped(rotated)), base, 1e-12);
  }
}

TEST(CrowdingSeriesTest, Statistics) {
  auto single = summarize_crowding({{0.5, 0.2}});
  EXPECT_EQ(single.median, 0.2);
  EXPECT_EQ(single.max, 0.2);
  auto constant = summarize_crowding({{0.1, 0.3}, {0.2, 0.3}, {0.3, 0.3}});
  EXPECT_EQ(constant.median, constant.max);
  auto even = summarize_crowding({{0.1, 4.0}, {0.2, 1.0}, {0.3, 3.0}, {0.4, 2.0}});
  EXPECT_DOUBLE_EQ(even.median, 2.5);
  EXPECT_EQ(even.max, 4.0);
  EXPECT_EQ(even.points.front().s, 0.1);
  EXPECT_THROW(summarize_crowding({}), Error);
}

TEST(CrowdingSeriesTest, FromSnapshots) {
  std::vector<SpectralSnapshot> snaps(2);
  snaps[0].s = 0.5;
  snaps[0].phases = {0.0, kPi};
  snaps[1].s = 1.0;
  snaps[1].phases = {-kPi / 2, 0.0, kPi};
  auto series = crowding_series(snaps);
  ASSERT_EQ(series.points.size(), 2U);
  EXPECT_DOUBLE_EQ(series.points[1].dtheta_min, kPi / 2);
  EXPECT_DOUBLE_EQ(series.max, kPi);
  EXPECT_DOUBLE_EQ(series.median, 0.75 * kPi);
}

}  // namespace
}  // namespace phaseflow
