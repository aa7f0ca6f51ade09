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

#include "widthapx/graph.hpp"

#include <algorithm>
#include <sstream>

#include "text_util.hpp"
#include "widthapx/errors.hpp"

namespace widthapx {

Graph::Graph(int n) : n_(n), adjacency_(n) {
  if (n < 0) throw DomainError("vertex count must be nonnegative");
}

std::uint64_t Graph::key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

int Graph::add_edge(int u, int v, std::uint64_t weight) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) {
    throw ValidationError("edge (" + std::to_string(u + 1) + "," + std::to_string(v + 1) +
                          ") has a vertex out of range");
  }
  if (u == v) throw ValidationError("self-loop at vertex " + std::to_string(u + 1));
  if (weight == 0) throw ValidationError("edge weights must be at least 1");
  const std::uint64_t k = key(u, v);
  if (index_.count(k)) {
    throw ValidationError("duplicate edge (" + std::to_string(u + 1) + "," +
                          std::to_string(v + 1) + ")");
  }
  const int id = static_cast<int>(edges_.size());
  index_.emplace(k, id);
  edges_.push_back(Edge{std::min(u, v), std::max(u, v), weight});
  auto insert_sorted = [](std::vector<int>& list, int x) {
    list.insert(std::lower_bound(list.begin(), list.end(), x), x);
  };
  insert_sorted(adjacency_[u], v);
  insert_sorted(adjacency_[v], u);
  return id;
}

int Graph::edge_index(int u, int v) const {
  if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_) return -1;
  auto it = index_.find(key(u, v));
  return it == index_.end() ? -1 : it->second;
}

int Graph::max_degree() const {
  int d = 0;
  for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
  return d;
}

std::uint64_t Graph::total_weight() const {
  std::uint64_t total = 0;
  for (const Edge& e : edges_) total += e.weight;
  return total;
}

void Graph::set_capacity(int v, std::uint64_t capacity) {
  if (capacities_.empty()) capacities_.assign(n_, 0);
  capacities_.at(v) = capacity;
}

void Graph::set_cost(int v, std::uint64_t cost) {
  if (costs_.empty()) costs_.assign(n_, 1);
  costs_.at(v) = cost;
}

void Graph::set_capacities(std::vector<std::uint64_t> capacities) {
  if (!capacities.empty() && static_cast<int>(capacities.size()) != n_) {
    throw DomainError("capacity vector size mismatch");
  }
  capacities_ = std::move(capacities);
}

void Graph::set_costs(std::vector<std::uint64_t> costs) {
  if (!costs.empty() && static_cast<int>(costs.size()) != n_) {
    throw DomainError("cost vector size mismatch");
  }
  costs_ = std::move(costs);
}

Graph Graph::parse(std::string_view text) {
  const std::vector<detail::Line> lines = detail::tokenize(text);
  if (lines.empty() || lines[0].tokens[0] != "p") {
    throw ParseError(lines.empty() ? 0 : lines[0].number, "missing 'p graph <n> <m>' header");
  }
  const detail::Line& header = lines[0];
  detail::expect_arity(header, 4);
  if (header.tokens[1] != "graph") throw ParseError(header.number, "expected 'p graph'");
  const std::int64_t n = detail::to_int(header.tokens[2], header.number);
  const std::int64_t m = detail::to_int(header.tokens[3], header.number);
  if (n < 0 || n > (1 << 24)) throw ParseError(header.number, "vertex count out of range");
  if (m < 0) throw ParseError(header.number, "edge count out of range");
  Graph g(static_cast<int>(n));
  auto vertex = [&](std::string_view token, int line) {
    const std::int64_t v = detail::to_int(token, line);
    if (v < 1 || v > n) throw ParseError(line, "vertex " + std::string(token) + " out of range");
    return static_cast<int>(v - 1);
  };
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const detail::Line& line = lines[i];
    const std::string_view kind = line.tokens[0];
    if (kind == "e") {
      if (line.tokens.size() != 3 && line.tokens.size() != 4) {
        throw ParseError(line.number, "expected 'e <u> <v> [<weight>]'");
      }
      const int u = vertex(line.tokens[1], line.number);
      const int v = vertex(line.tokens[2], line.number);
      std::int64_t w = 1;
      if (line.tokens.size() == 4) w = detail::to_int(line.tokens[3], line.number);
      if (w < 1) throw ParseError(line.number, "edge weights must be at least 1");
      try {
        g.add_edge(u, v, static_cast<std::uint64_t>(w));
      } catch (const ValidationError& e) {
        throw ParseError(line.number, e.what());
      }
    } else if (kind == "v") {
      if (line.tokens.size() != 3 && line.tokens.size() != 4) {
        throw ParseError(line.number, "expected 'v <u> <capacity> [<cost>]'");
      }
      const int u = vertex(line.tokens[1], line.number);
      const std::int64_t cap = detail::to_int(line.tokens[2], line.number);
      if (cap < 0) throw ParseError(line.number, "capacities must be nonnegative");
      g.set_capacity(u, static_cast<std::uint64_t>(cap));
      if (line.tokens.size() == 4) {
        const std::int64_t cost = detail::to_int(line.tokens[3], line.number);
        if (cost < 0) throw ParseError(line.number, "costs must be nonnegative");
        g.set_cost(u, static_cast<std::uint64_t>(cost));
      }
    } else {
      throw ParseError(line.number, "unknown line type '" + std::string(kind) + "'");
    }
  }
  if (g.m() != m) {
    throw ParseError(header.number, "header announces " + std::to_string(m) + " edges, found " +
                                        std::to_string(g.m()));
  }
  return g;
}

std::string Graph::render() const {
  std::ostringstream out;
  out << "p graph " << n_ << " " << edges_.size() << "\n";
  for (const Edge& e : edges_) {
    out << "e " << e.u + 1 << " " << e.v + 1;
    if (e.weight != 1) out << " " << e.weight;
    out << "\n";
  }
  if (!capacities_.empty() || !costs_.empty()) {
    for (int v = 0; v < n_; ++v) {
      out << "v " << v + 1 << " " << capacity(v);
      if (!costs_.empty()) out << " " << cost(v);
      out << "\n";
    }
  }
  return out.str();
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size()) return false;
  for (const Edge& e : a.edges_) {
    const int j = b.edge_index(e.u, e.v);
    if (j < 0 || b.edges_[j].weight != e.weight) return false;
  }
  for (int v = 0; v < a.n_; ++v) {
    if (a.capacity(v) != b.capacity(v) || a.cost(v) != b.cost(v)) return false;
  }
  return a.has_capacities() == b.has_capacities();
}

Graph induced_subgraph(const Graph& g, const std::vector<char>& keep,
                       std::vector<int>* original_ids) {
  std::vector<int> new_id(g.n(), -1);
  std::vector<int> ids;
  for (int v = 0; v < g.n(); ++v) {
    if (keep[v]) {
      new_id[v] = static_cast<int>(ids.size());
      ids.push_back(v);
    }
  }
  Graph h(static_cast<int>(ids.size()));
  for (const Edge& e : g.edges()) {
    if (new_id[e.u] >= 0 && new_id[e.v] >= 0) h.add_edge(new_id[e.u], new_id[e.v], e.weight);
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (g.has_capacities()) h.set_capacity(static_cast<int>(i), g.capacity(ids[i]));
    if (g.has_costs()) h.set_cost(static_cast<int>(i), g.cost(ids[i]));
  }
  if (original_ids) *original_ids = std::move(ids);
  return h;
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
  Graph h(g.n());
  for (const Edge& e : g.edges()) h.add_edge(perm[e.u], perm[e.v], e.weight);
  for (int v = 0; v < g.n(); ++v) {
    if (g.has_capacities()) h.set_capacity(perm[v], g.capacity(v));
    if (g.has_costs()) h.set_cost(perm[v], g.cost(v));
  }
  return h;
}

}  // namespace widthapx
