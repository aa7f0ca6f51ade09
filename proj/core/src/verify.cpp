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

#include "widthapx/verify.hpp"

#include <algorithm>
#include <limits>

#include "widthapx/errors.hpp"
#include "widthapx/flow.hpp"

namespace widthapx {

namespace {

double load_ratio(std::uint64_t load, std::uint64_t capacity) {
  if (load == 0) return 0;
  if (capacity == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(load) / static_cast<double>(capacity);
}

}  // namespace

std::int64_t cut_value(const Graph& g, const std::vector<int>& side) {
  if (static_cast<int>(side.size()) != g.n()) throw ValidationError("partition has wrong length");
  for (int s : side) {
    if (s != 0 && s != 1) throw ValidationError("partition sides must be 0 or 1");
  }
  std::int64_t cut = 0;
  for (const Edge& e : g.edges()) cut += side[e.u] != side[e.v] ? 1 : 0;
  return cut;
}

bool is_edge_dominating(const Graph& g, const std::vector<int>& edges) {
  std::vector<char> touched(g.n(), 0);
  for (int id : edges) {
    if (id < 0 || id >= g.m()) return false;
    touched[g.edges()[id].u] = 1;
    touched[g.edges()[id].v] = 1;
  }
  for (const Edge& e : g.edges()) {
    if (!touched[e.u] && !touched[e.v]) return false;
  }
  return true;
}

bool is_proper_coloring(const Graph& g, const std::vector<int>& color, int k) {
  if (static_cast<int>(color.size()) != g.n()) return false;
  for (int c : color) {
    if (c < 0 || c >= k) return false;
  }
  for (const Edge& e : g.edges()) {
    if (color[e.u] == color[e.v]) return false;
  }
  return true;
}

std::vector<std::int64_t> color_class_sizes(const std::vector<int>& color, int k) {
  std::vector<std::int64_t> sizes(k, 0);
  for (int c : color) {
    if (c >= 0 && c < k) ++sizes[c];
  }
  return sizes;
}

double class_ratio(const std::vector<std::int64_t>& sizes) {
  if (sizes.empty()) return std::numeric_limits<double>::infinity();
  const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
  if (*lo == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(*hi) / static_cast<double>(*lo);
}

DominationCheck check_domination(const Graph& g, const std::vector<int>& selected,
                                 const std::vector<int>& dominator) {
  DominationCheck out;
  const int n = g.n();
  std::vector<char> in(n, 0);
  for (int v : selected) {
    if (v < 0 || v >= n || in[v]) {
      out.valid = false;
      return out;
    }
    in[v] = 1;
    out.cost += g.cost(v);
  }
  if (static_cast<int>(dominator.size()) != n) {
    out.valid = false;
    return out;
  }
  std::vector<std::uint64_t> load(n, 0);
  for (int v = 0; v < n; ++v) {
    const int d = dominator[v];
    if (in[v]) {
      if (d != kSelfDominated) out.valid = false;
      continue;
    }
    if (d == kUndominated) {
      ++out.undominated;
      continue;
    }
    if (d < 0 || d >= n || !in[d] || !g.has_edge(v, d)) {
      out.valid = false;
      continue;
    }
    ++load[d];
  }
  for (int v : selected) out.capacity_ratio = std::max(out.capacity_ratio, load_ratio(load[v], g.capacity(v)));
  return out;
}

CoverCheck check_capacitated_cover(const Graph& g, const std::vector<int>& cover,
                                   const std::vector<int>& owner) {
  CoverCheck out;
  std::vector<char> in(g.n(), 0);
  for (int v : cover) in.at(v) = 1;
  if (static_cast<int>(owner.size()) != g.m()) {
    out.covers = false;
    return out;
  }
  std::vector<std::uint64_t> load(g.n(), 0);
  for (int id = 0; id < g.m(); ++id) {
    const Edge& e = g.edges()[id];
    const int o = owner[id];
    if ((o != e.u && o != e.v) || !in[o]) {
      out.covers = false;
      continue;
    }
    ++load[o];
  }
  for (int v : cover) out.capacity_ratio = std::max(out.capacity_ratio, load_ratio(load[v], g.capacity(v)));
  return out;
}

int residual_max_degree(const Graph& g, const std::vector<int>& deleted) {
  std::vector<char> gone(g.n(), 0);
  for (int v : deleted) gone.at(v) = 1;
  int best = 0;
  for (int v = 0; v < g.n(); ++v) {
    if (gone[v]) continue;
    int d = 0;
    for (int u : g.neighbors(v)) d += gone[u] ? 0 : 1;
    best = std::max(best, d);
  }
  return best;
}

std::int64_t max_weighted_outdegree(const Graph& g, const std::vector<int>& tail) {
  if (static_cast<int>(tail.size()) != g.m()) throw ValidationError("orientation has wrong length");
  std::vector<std::int64_t> out(g.n(), 0);
  for (int id = 0; id < g.m(); ++id) {
    const Edge& e = g.edges()[id];
    if (tail[id] != e.u && tail[id] != e.v) {
      throw ValidationError("orientation names a vertex outside its edge");
    }
    out[tail[id]] += static_cast<std::int64_t>(e.weight);
  }
  std::int64_t best = 0;
  for (std::int64_t x : out) best = std::max(best, x);
  return best;
}

}  // namespace widthapx
