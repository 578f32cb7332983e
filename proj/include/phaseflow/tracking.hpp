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
#include <optional>
#include <span>
#include <vector>

#include "phaseflow/graph.hpp"
#include "phaseflow/linalg.hpp"
#include "phaseflow/spectral.hpp"

namespace phaseflow {

/// Bijection on {0, ..., n-1}; image()[i] is where i is sent.
class Permutation {
 public:
  Permutation() = default;
  static Permutation identity(std::size_t n);
  /// Throws Error("tracking") if `image` is not a bijection.
  explicit Permutation(std::vector<int> image);

  std::size_t size() const noexcept { return image_.size(); }
  int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& image() const noexcept { return image_; }

  /// `next` applied after this one: i -> next(this(i)).
  Permutation then(const Permutation& next) const;
  Permutation inverse() const;
  bool is_identity() const;

  /// Disjoint cycles, each starting at its smallest element, ordered by that
  /// element. Fixed points are included as length-1 cycles.
  std::vector<std::vector<int>> cycles() const;
  std::size_t nontrivial_cycle_count() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> image_;
};

/// O(i, j) = |<a_i, b_j>| for the eigenvector columns of two snapshots.
RealMatrix overlap_matrix(const SpectralSnapshot& a, const SpectralSnapshot& b);

/// Maximum-weight perfect matching of rows to columns (Hungarian method).
/// Result maps row i to its column.
Permutation assign_bands(const RealMatrix& overlaps);

/// Row-by-row greedy matching: each row takes its largest still-free column.
Permutation greedy_assign(const RealMatrix& overlaps);

double assignment_total(const RealMatrix& overlaps, const Permutation& assignment);

struct BandTrack {
  std::size_t band_count = 0;
  std::vector<double> s;
  /// (band, snapshot) -> tracked phase. Band b starts at column b of the
  /// first snapshot.
  RealMatrix trajectories;
  /// assignments[k] maps columns of snapshot k to columns of snapshot k+1.
  std::vector<Permutation> assignments;
  /// Smallest overlap along assignments[k]; a tracking-confidence measure.
  std::vector<double> min_overlaps;
  /// Rows on which the greedy matching disagrees with the optimal one.
  std::vector<std::size_t> greedy_disagreements;
  /// Snapshot-0 column -> final-snapshot column.
  Permutation composed;
  std::vector<double> first_phases;
  std::vector<double> last_phases;
  double continuity_threshold = 0.0;
  std::size_t continuity_violations = 0;
  double max_phase_jump = 0.0;
};

/// Incremental band tracking: feed snapshots in order, then finish(). Only
/// the most recent snapshot is retained.
class BandTracker {
 public:
  /// A non-positive threshold selects 10 * 2 pi / band_count.
  explicit BandTracker(double continuity_threshold = 0.0);

  void push(SpectralSnapshot snapshot);
  std::size_t snapshot_count() const noexcept { return track_.s.size(); }
  /// Most recent snapshot, or nullptr before the first push.
  const SpectralSnapshot* last_snapshot() const noexcept {
    return previous_ ? &*previous_ : nullptr;
  }
  /// Throws Error("tracking") with fewer than two snapshots.
  BandTrack finish() const;

 private:
  double requested_threshold_;
  std::optional<SpectralSnapshot> previous_;
  std::vector<int> current_columns_;
  std::vector<std::vector<double>> columns_;  // per snapshot, phase of each band
  BandTrack track_;
};

BandTrack track_bands(std::span<const SpectralSnapshot> snapshots, double continuity_threshold = 0.0);

struct PermutationResult {
  /// Initial sorted slot -> final sorted slot.
  Permutation pi;
  std::vector<std::vector<int>> cycles;
  std::size_t nontrivial_cycle_count = 0;
};

/// Ranks of the phases in ascending order (stable): rank[c] is the sorted
/// slot of column c.
Permutation phase_ranks(std::span<const double> phases);

/// pi = rank_final o composed o rank_initial^{-1}, with its cycle structure.
PermutationResult end_to_end_permutation(const BandTrack& track);
PermutationResult describe_permutation(Permutation pi);

/// Bands that end in the terminal solution manifold: final eigenvectors with
/// squared projection >= threshold onto span{|b> : b optimal}.
struct TerminalClusterReport {
  double projection_threshold = 0.9;
  /// Final-snapshot columns inside the manifold, ascending.
  std::vector<int> final_columns;
  /// Initial sorted slots of the bands that end there, ascending.
  std::vector<int> initial_slots;
  /// Relative order of those bands: position among initial_slots ->
  /// position among their final slots.
  PermutationResult sub_permutation;
};

TerminalClusterReport terminal_cluster(const BandTrack& track, const SpectralSnapshot& last,
                                       std::span<const BasisIndex> optimal_indices,
                                       double projection_threshold = 0.9);

}  // namespace phaseflow
