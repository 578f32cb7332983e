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

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace phaseflow {

/// Computational basis index. Bit i of the index is the value of vertex
/// (qubit) i, i.e. index = sum_i z_i * 2^i. The matching bitstring has z_i as
/// its i-th character, so "01" (z_0 = 0, z_1 = 1) is basis index 2.
using BasisIndex = std::uint32_t;

inline constexpr int kDefaultMaxVertices = 12;

struct Edge {
  int u = 0;
  int v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph defining a MaxCut instance. Edges are stored with
/// u < v, sorted, with no duplicates or self-loops.
class Graph {
 public:
  /// Validates and normalizes (u > v pairs are swapped, edges sorted).
  /// Throws phaseflow::Error tagged "graph" on invalid input.
  static Graph create(int vertex_count, std::vector<Edge> edges,
                      int max_vertices = kDefaultMaxVertices);

  int vertex_count() const noexcept { return vertex_count_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t dimension() const noexcept { return std::size_t{1} << vertex_count_; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  Graph(int n, std::vector<Edge> edges) : vertex_count_(n), edges_(std::move(edges)) {}

  int vertex_count_ = 0;
  std::vector<Edge> edges_;
};

/// Parses the edge-list text format:
///
///     # comment
///     n 5
///     0 1
///     1 2
///
/// Blank lines and '#' comments are ignored. Errors carry the 1-based line
/// number and are tagged "parse".
Graph parse_edge_list(std::string_view text, int max_vertices = kDefaultMaxVertices);

/// Serializes to the format accepted by parse_edge_list.
std::string format_edge_list(const Graph& g);

std::string to_bitstring(BasisIndex index, int vertex_count);
BasisIndex from_bitstring(std::string_view bits);

int cut_value(const Graph& g, BasisIndex z);
/// Throws if |bits| != n or bits contains anything other than '0'/'1'.
int cut_value(const Graph& g, std::string_view bits);

struct CutOracleResult {
  int c_star = 0;
  std::size_t degeneracy = 0;
  /// Optimal bitstrings in lexicographic order.
  std::vector<std::string> optimal_set;
  /// Basis indices of optimal_set, ascending.
  std::vector<BasisIndex> optimal_indices;
};

/// Exhaustive enumeration over all 2^n assignments.
CutOracleResult brute_force_optimum(const Graph& g, int max_vertices = kDefaultMaxVertices);

bool is_bipartite(const Graph& g);

/// Target shape for generated instances.
struct InstanceShape {
  int vertices = 0;
  int edges = 0;
  int c_star = 0;
  int degeneracy = 0;
};

/// Deterministic search for a connected graph with the requested
/// (n, |E|, C*, degeneracy). Candidates are drawn from a fixed-seed
/// mt19937_64 stream; the first match is returned. Throws if none is found
/// within max_attempts.
Graph generate_instance(const InstanceShape& shape, std::uint64_t seed = 1,
                        int max_attempts = 1'000'000);

/// Named instances with the shapes of the reference runs: "n5e6", "n7e8",
/// "n10e25". Also "k2", "k3", "c5" for small checks.
Graph preset_instance(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace phaseflow
