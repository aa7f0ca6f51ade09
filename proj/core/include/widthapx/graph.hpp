// Copyright 2026 The widthapx Authors
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

#ifndef WIDTHAPX_GRAPH_HPP_
#define WIDTHAPX_GRAPH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace widthapx {

struct Edge {
  int u = 0;
  int v = 0;
  std::uint64_t weight = 1;
};

// Simple undirected graph on vertices 0..n-1 (1-based in text form) with
// optional edge weights, vertex capacities and vertex costs.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }

  // Throws ValidationError on self-loops, duplicates, range or weight 0.
  int add_edge(int u, int v, std::uint64_t weight = 1);
  bool has_edge(int u, int v) const { return edge_index(u, v) >= 0; }
  // Index into edges(), or -1.
  int edge_index(int u, int v) const;
  const std::vector<Edge>& edges() const { return edges_; }
  // Sorted ascending.
  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
  int max_degree() const;
  std::uint64_t total_weight() const;

  bool has_capacities() const { return !capacities_.empty(); }
  bool has_costs() const { return !costs_.empty(); }
  // Capacity 0 and cost 1 when absent.
  std::uint64_t capacity(int v) const { return capacities_.empty() ? 0 : capacities_[v]; }
  std::uint64_t cost(int v) const { return costs_.empty() ? 1 : costs_[v]; }
  void set_capacity(int v, std::uint64_t capacity);
  void set_cost(int v, std::uint64_t cost);
  void set_capacities(std::vector<std::uint64_t> capacities);
  void set_costs(std::vector<std::uint64_t> costs);
  const std::vector<std::uint64_t>& capacities() const { return capacities_; }
  const std::vector<std::uint64_t>& costs() const { return costs_; }

  // `c` comments, `p graph <n> <m>`, `e <u> <v> [<w>]`, `v <u> <cap> [<cost>]`.
  static Graph parse(std::string_view text);
  std::string render() const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  static std::uint64_t key(int u, int v);

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::unordered_map<std::uint64_t, int> index_;
  std::vector<std::uint64_t> capacities_;
  std::vector<std::uint64_t> costs_;
};

// Subgraph induced by `keep` (a 0/1 mask); vertex i of the result is the
// i-th kept vertex. Attributes are carried over.
Graph induced_subgraph(const Graph& g, const std::vector<char>& keep,
                       std::vector<int>* original_ids = nullptr);

// Graph with vertex v renamed to perm[v].
Graph relabel(const Graph& g, const std::vector<int>& perm);

}  // namespace widthapx

#endif  // WIDTHAPX_GRAPH_HPP_
