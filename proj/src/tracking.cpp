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

#include "phaseflow/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "phaseflow/error.hpp"

namespace phaseflow {

Permutation Permutation::identity(std::size_t n) {
  std::vector<int> image(n);
  std::iota(image.begin(), image.end(), 0);
  return Permutation(std::move(image));
}

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<char> seen(image_.size(), 0);
  for (int x : image_) {
    if (x < 0 || static_cast<std::size_t>(x) >= image_.size() || seen[static_cast<std::size_t>(x)]) {
      throw Error("tracking", "not a permutation");
    }
    seen[static_cast<std::size_t>(x)] = 1;
  }
}

Permutation Permutation::then(const Permutation& next) const {
  if (next.size() != size()) throw Error("tracking", "permutation size mismatch");
  std::vector<int> image(size());
  for (std::size_t i = 0; i < size(); ++i) image[i] = next(image_[i]);
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<int> image(size());
  for (std::size_t i = 0; i < size(); ++i) {
    image[static_cast<std::size_t>(image_[i])] = static_cast<int>(i);
  }
  return Permutation(std::move(image));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (image_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> visited(size(), 0);
  for (std::size_t start = 0; start < size(); ++start) {
    if (visited[start]) continue;
    std::vector<int> cycle;
    for (int x = static_cast<int>(start); !visited[static_cast<std::size_t>(x)]; x = image_[static_cast<std::size_t>(x)]) {
      visited[static_cast<std::size_t>(x)] = 1;
      cycle.push_back(x);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

std::size_t Permutation::nontrivial_cycle_count() const {
  std::size_t count = 0;
  for (const auto& c : cycles()) count += c.size() >= 2;
  return count;
}

RealMatrix overlap_matrix(const SpectralSnapshot& a, const SpectralSnapshot& b) {
  if (a.vectors.rows() != b.vectors.rows() || a.vectors.cols() != b.vectors.cols()) {
    throw Error("tracking", "snapshot dimensions differ");
  }
  return (a.vectors.adjoint() * b.vectors).cwiseAbs();
}

Permutation assign_bands(const RealMatrix& overlaps) {
  if (overlaps.rows() != overlaps.cols()) throw Error("tracking", "overlap matrix must be square");
  // Shortest augmenting path Hungarian method on cost = -overlap, with row
  // and column potentials. Arrays are 1-based; index 0 is a sentinel.
  const int n = static_cast<int>(overlaps.rows());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> row_pot(n + 1, 0.0), col_pot(n + 1, 0.0), min_slack(n + 1);
  std::vector<int> col_owner(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int row = 1; row <= n; ++row) {
    col_owner[0] = row;
    int col0 = 0;
    std::fill(min_slack.begin(), min_slack.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[col0] = 1;
      const int r = col_owner[col0];
      double delta = kInf;
      int col1 = 0;
      for (int c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double reduced = -overlaps(r - 1, c - 1) - row_pot[r] - col_pot[c];
        if (reduced < min_slack[c]) {
          min_slack[c] = reduced;
          way[c] = col0;
        }
        if (min_slack[c] < delta) {
          delta = min_slack[c];
          col1 = c;
        }
      }
      for (int c = 0; c <= n; ++c) {
        if (used[c]) {
          row_pot[col_owner[c]] += delta;
          col_pot[c] -= delta;
        } else {
          min_slack[c] -= delta;
        }
      }
      col0 = col1;
    } while (col_owner[col0] != 0);
    do {
      const int prev = way[col0];
      col_owner[col0] = col_owner[prev];
      col0 = prev;
    } while (col0 != 0);
  }
  std::vector<int> image(static_cast<std::size_t>(n));
  for (int c = 1; c <= n; ++c) image[static_cast<std::size_t>(col_owner[c] - 1)] = c - 1;
  return Permutation(std::move(image));
}

Permutation greedy_assign(const RealMatrix& overlaps) {
  if (overlaps.rows() != overlaps.cols()) throw Error("tracking", "overlap matrix must be square");
  const auto n = static_cast<std::size_t>(overlaps.rows());
  std::vector<char> taken(n, 0);
  std::vector<int> image(n);
  for (std::size_t i = 0; i < n; ++i) {
    int best = -1;
    for (std::size_t j = 0; j < n; ++j) {
      if (taken[j]) continue;
      if (best < 0 || overlaps(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) >
                          overlaps(static_cast<Eigen::Index>(i), best)) {
        best = static_cast<int>(j);
      }
    }
    taken[static_cast<std::size_t>(best)] = 1;
    image[i] = best;
  }
  return Permutation(std::move(image));
}

double assignment_total(const RealMatrix& overlaps, const Permutation& assignment) {
  double total = 0.0;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    total += overlaps(static_cast<Eigen::Index>(i), assignment(static_cast<int>(i)));
  }
  return total;
}

BandTracker::BandTracker(double continuity_threshold)
    : requested_threshold_(continuity_threshold) {}

void BandTracker::push(SpectralSnapshot snapshot) {
  const std::size_t n = snapshot.size();
  if (static_cast<std::size_t>(snapshot.vectors.cols()) != n ||
      static_cast<std::size_t>(snapshot.vectors.rows()) != n) {
    throw Error("tracking", "snapshot vectors do not match its phase count");
  }
  if (!previous_) {
    track_.band_count = n;
    track_.continuity_threshold =
        requested_threshold_ > 0.0 ? requested_threshold_
                                   : 10.0 * 2.0 * std::numbers::pi / static_cast<double>(n);
    track_.first_phases = snapshot.phases;
    current_columns_.resize(n);
    std::iota(current_columns_.begin(), current_columns_.end(), 0);
  } else {
    if (n != track_.band_count) throw Error("tracking", "snapshot dimension mismatch");
    const RealMatrix overlaps = overlap_matrix(*previous_, snapshot);
    Permutation assignment = assign_bands(overlaps);
    const Permutation greedy = greedy_assign(overlaps);
    double min_overlap = 1.0;
    std::size_t disagreements = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const int j = assignment(static_cast<int>(i));
      min_overlap = std::min(min_overlap, overlaps(static_cast<Eigen::Index>(i), j));
      disagreements += greedy(static_cast<int>(i)) != j;
    }
    for (int& column : current_columns_) column = assignment(column);
    track_.min_overlaps.push_back(min_overlap);
    track_.greedy_disagreements.push_back(disagreements);
    track_.assignments.push_back(std::move(assignment));
  }
  std::vector<double> band_phases(n);
  for (std::size_t b = 0; b < n; ++b) {
    band_phases[b] = snapshot.phases[static_cast<std::size_t>(current_columns_[b])];
  }
  if (!columns_.empty()) {
    for (std::size_t b = 0; b < n; ++b) {
      const double jump = circular_distance(band_phases[b], columns_.back()[b]);
      track_.max_phase_jump = std::max(track_.max_phase_jump, jump);
      if (jump > track_.continuity_threshold) ++track_.continuity_violations;
    }
  }
  columns_.push_back(std::move(band_phases));
  track_.s.push_back(snapshot.s);
  track_.last_phases = snapshot.phases;
  previous_ = std::move(snapshot);
}

BandTrack BandTracker::finish() const {
  if (columns_.size() < 2) throw Error("tracking", "band tracking needs at least two snapshots");
  BandTrack out = track_;
  const auto n = static_cast<Eigen::Index>(out.band_count);
  out.trajectories.resize(n, static_cast<Eigen::Index>(columns_.size()));
  for (std::size_t k = 0; k < columns_.size(); ++k) {
    for (Eigen::Index b = 0; b < n; ++b) {
      out.trajectories(b, static_cast<Eigen::Index>(k)) = columns_[k][static_cast<std::size_t>(b)];
    }
  }
  out.composed = Permutation(current_columns_);
  return out;
}

BandTrack track_bands(std::span<const SpectralSnapshot> snapshots, double continuity_threshold) {
  BandTracker tracker(continuity_threshold);
  for (const auto& snap : snapshots) tracker.push(snap);
  return tracker.finish();
}

Permutation phase_ranks(std::span<const double> phases) {
  std::vector<int> order(phases.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return phases[static_cast<std::size_t>(a)] < phases[static_cast<std::size_t>(b)];
  });
  // order[rank] = column, so ranks are its inverse.
  return Permutation(std::move(order)).inverse();
}

PermutationResult describe_permutation(Permutation pi) {
  PermutationResult result;
  result.cycles = pi.cycles();
  for (const auto& c : result.cycles) result.nontrivial_cycle_count += c.size() >= 2;
  result.pi = std::move(pi);
  return result;
}

PermutationResult end_to_end_permutation(const BandTrack& track) {
  const Permutation initial_rank = phase_ranks(track.first_phases);
  const Permutation final_rank = phase_ranks(track.last_phases);
  return describe_permutation(initial_rank.inverse().then(track.composed).then(final_rank));
}

TerminalClusterReport terminal_cluster(const BandTrack& track, const SpectralSnapshot& last,
                                       std::span<const BasisIndex> optimal_indices,
                                       double projection_threshold) {
  if (last.size() != track.band_count) throw Error("tracking", "final snapshot size mismatch");
  TerminalClusterReport report;
  report.projection_threshold = projection_threshold;
  for (Eigen::Index c = 0; c < last.vectors.cols(); ++c) {
    double weight = 0.0;
    for (BasisIndex b : optimal_indices) weight += std::norm(last.vectors(b, c));
    if (weight >= projection_threshold) report.final_columns.push_back(static_cast<int>(c));
  }
  const Permutation initial_rank = phase_ranks(track.first_phases);
  const Permutation final_rank = phase_ranks(track.last_phases);
  const Permutation origin = track.composed.inverse();

  std::vector<std::pair<int, int>> slots;  // (initial slot, final slot)
  for (int column : report.final_columns) {
    slots.emplace_back(initial_rank(origin(column)), final_rank(column));
  }
  std::sort(slots.begin(), slots.end());
  std::vector<int> final_slots;
  for (const auto& [initial, final_slot] : slots) {
    report.initial_slots.push_back(initial);
    final_slots.push_back(final_slot);
  }
  std::vector<int> sorted_final = final_slots;
  std::sort(sorted_final.begin(), sorted_final.end());
  std::vector<int> relative(final_slots.size());
  for (std::size_t k = 0; k < final_slots.size(); ++k) {
    relative[k] = static_cast<int>(
        std::lower_bound(sorted_final.begin(), sorted_final.end(), final_slots[k]) -
        sorted_final.begin());
  }
  report.sub_permutation = describe_permutation(Permutation(std::move(relative)));
  return report;
}

}  // namespace phaseflow
