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

#include "phaseflow/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>
#include <random>
#include <sstream>

#include "phaseflow/error.hpp"

namespace phaseflow {

namespace {

std::string line_error(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
    if (end > pos) tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

bool parse_int(std::string_view token, int& out) {
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), last, out);
  return ec == std::errc{} && ptr == last;
}

// Mask of the endpoints of every edge, for fast cut evaluation.
std::vector<BasisIndex> edge_masks(const Graph& g) {
  std::vector<BasisIndex> masks;
  masks.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    masks.push_back((BasisIndex{1} << e.u) | (BasisIndex{1} << e.v));
  }
  return masks;
}

int cut_with_masks(const std::vector<BasisIndex>& masks, BasisIndex z) {
  int cut = 0;
  for (BasisIndex m : masks) cut += std::popcount(z & m) == 1;
  return cut;
}

bool is_connected(int n, const std::vector<Edge>& edges) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (const Edge& e : edges) {
    int a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

}  // namespace

Graph Graph::create(int vertex_count, std::vector<Edge> edges, int max_vertices) {
  if (vertex_count < 1) throw Error("graph", "vertex count must be positive");
  if (vertex_count > max_vertices) {
    throw Error("graph", "vertex count " + std::to_string(vertex_count) + " exceeds maximum " +
                             std::to_string(max_vertices));
  }
  for (Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= vertex_count || e.v >= vertex_count) {
      throw Error("graph", "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                               ") out of range");
    }
    if (e.u == e.v) throw Error("graph", "self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw Error("graph", "duplicate edge (" + std::to_string(dup->u) + ", " +
                             std::to_string(dup->v) + ")");
  }
  return Graph(vertex_count, std::move(edges));
}

Graph parse_edge_list(std::string_view text, int max_vertices) {
  int n = -1;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = split_tokens(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (n < 0) {
      if (tokens.size() != 2 || tokens[0] != "n" || !parse_int(tokens[1], n) || n < 1) {
        throw Error("parse", line_error(line_no, "expected header 'n <count>'"));
      }
      if (n > max_vertices) {
        throw Error("parse", line_error(line_no, "vertex count " + std::to_string(n) +
                                                     " exceeds maximum " +
                                                     std::to_string(max_vertices)));
      }
      continue;
    }
    Edge e;
    if (tokens.size() != 2 || !parse_int(tokens[0], e.u) || !parse_int(tokens[1], e.v)) {
      throw Error("parse", line_error(line_no, "malformed edge line"));
    }
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw Error("parse", line_error(line_no, "vertex index out of range"));
    }
    if (e.u == e.v) throw Error("parse", line_error(line_no, "self-loop"));
    if (e.u > e.v) std::swap(e.u, e.v);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (edges[k] == e) {
        throw Error("parse", line_error(line_no, "duplicate edge (first at line " +
                                                     std::to_string(edge_lines[k]) + ")"));
      }
    }
    edges.push_back(e);
    edge_lines.push_back(line_no);
    if (end == text.size()) break;
  }
  if (n < 0) throw Error("parse", "missing header 'n <count>'");
  return Graph::create(n, std::move(edges), max_vertices);
}

std::string format_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.vertex_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

std::string to_bitstring(BasisIndex index, int vertex_count) {
  std::string bits(static_cast<std::size_t>(vertex_count), '0');
  for (int i = 0; i < vertex_count; ++i) {
    if ((index >> i) & 1U) bits[static_cast<std::size_t>(i)] = '1';
  }
  return bits;
}

BasisIndex from_bitstring(std::string_view bits) {
  if (bits.size() > 32) throw Error("graph", "bitstring longer than 32 bits");
  BasisIndex index = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      index |= BasisIndex{1} << i;
    } else if (bits[i] != '0') {
      throw Error("graph", "bitstring contains non-binary character");
    }
  }
  return index;
}

int cut_value(const Graph& g, BasisIndex z) {
  int cut = 0;
  for (const Edge& e : g.edges()) cut += ((z >> e.u) ^ (z >> e.v)) & 1U;
  return cut;
}

int cut_value(const Graph& g, std::string_view bits) {
  if (bits.size() != static_cast<std::size_t>(g.vertex_count())) {
    throw Error("graph", "bitstring length " + std::to_string(bits.size()) +
                             " does not match vertex count " +
                             std::to_string(g.vertex_count()));
  }
  return cut_value(g, from_bitstring(bits));
}

CutOracleResult brute_force_optimum(const Graph& g, int max_vertices) {
  if (g.vertex_count() > max_vertices) {
    throw Error("graph", "vertex count " + std::to_string(g.vertex_count()) +
                             " exceeds maximum " + std::to_string(max_vertices));
  }
  const auto masks = edge_masks(g);
  CutOracleResult result;
  result.c_star = -1;
  const BasisIndex dim = static_cast<BasisIndex>(g.dimension());
  for (BasisIndex z = 0; z < dim; ++z) {
    int cut = cut_with_masks(masks, z);
    if (cut > result.c_star) {
      result.c_star = cut;
      result.optimal_indices.clear();
    }
    if (cut == result.c_star) result.optimal_indices.push_back(z);
  }
  result.degeneracy = result.optimal_indices.size();
  for (BasisIndex z : result.optimal_indices) {
    result.optimal_set.push_back(to_bitstring(z, g.vertex_count()));
  }
  std::sort(result.optimal_set.begin(), result.optimal_set.end());
  return result;
}

bool is_bipartite(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : g.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<int> color(n, -1);
  for (int start = 0; start < n; ++start) {
    if (color[start] >= 0) continue;
    color[start] = 0;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[x]) {
        if (color[y] < 0) {
          color[y] = 1 - color[x];
          stack.push_back(y);
        } else if (color[y] == color[x]) {
          return false;
        }
      }
    }
  }
  return true;
}

Graph generate_instance(const InstanceShape& shape, std::uint64_t seed, int max_attempts) {
  const int n = shape.vertices;
  if (n < 2 || n > kDefaultMaxVertices) throw Error("graph", "unsupported vertex count");
  std::vector<Edge> all;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) all.push_back({u, v});
  }
  if (shape.edges < 0 || static_cast<std::size_t>(shape.edges) > all.size()) {
    throw Error("graph", "edge count out of range");
  }
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    // Partial Fisher-Yates on raw engine output keeps the stream portable.
    for (int k = 0; k < shape.edges; ++k) {
      std::size_t pick = k + static_cast<std::size_t>(rng() % (all.size() - k));
      std::swap(all[k], all[pick]);
    }
    std::vector<Edge> edges(all.begin(), all.begin() + shape.edges);
    if (!is_connected(n, edges)) continue;
    Graph g = Graph::create(n, std::move(edges));
    CutOracleResult oracle = brute_force_optimum(g);
    if (oracle.c_star == shape.c_star &&
        oracle.degeneracy == static_cast<std::size_t>(shape.degeneracy)) {
      return g;
    }
  }
  throw Error("graph", "no instance with the requested shape found in " +
                           std::to_string(max_attempts) + " attempts");
}

Graph preset_instance(std::string_view name) {
  // n5e6, n7e8 and n10e25 are the first matches of generate_instance with
  // seed 1 for the shapes (5, 6, 5, 2), (7, 8, 7, 4) and (10, 25, 18, 4).
  if (name == "k2") return Graph::create(2, {{0, 1}});
  if (name == "k3") return Graph::create(3, {{0, 1}, {1, 2}, {0, 2}});
  if (name == "c5") return Graph::create(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  if (name == "n5e6") {
    return Graph::create(5, {{0, 1}, {0, 4}, {1, 2}, {1, 4}, {2, 3}, {2, 4}});
  }
  if (name == "n7e8") {
    return Graph::create(7, {{0, 1}, {1, 2}, {1, 3}, {1, 6}, {2, 4}, {3, 6}, {4, 6}, {5, 6}});
  }
  if (name == "n10e25") {
    return Graph::create(10, {{0, 2}, {0, 3}, {0, 6}, {0, 7}, {1, 2}, {1, 3}, {1, 7},
                              {1, 8}, {2, 4}, {2, 6}, {2, 8}, {2, 9}, {3, 5}, {3, 6},
                              {3, 7}, {4, 6}, {4, 8}, {4, 9}, {5, 6}, {5, 9}, {6, 7},
                              {6, 8}, {6, 9}, {7, 9}, {8, 9}});
  }
  throw Error("graph", "unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
  return {"k2", "k3", "c5", "n5e6", "n7e8", "n10e25"};
}

}  // namespace phaseflow
