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

#include "widthapx/oracles.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <string>

#include "widthapx/errors.hpp"
#include "widthapx/flow.hpp"

namespace widthapx {

namespace {

void guard(const Graph& g, int limit = kOracleMaxVertices) {
  if (g.n() > limit) {
    throw LimitError("oracle limited to " + std::to_string(limit) + " vertices");
  }
}

std::vector<std::uint32_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint32_t> adj(g.n(), 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  return adj;
}

std::vector<int> bits(std::uint32_t mask) {
  std::vector<int> out;
  for (; mask; mask &= mask - 1) out.push_back(std::countr_zero(mask));
  return out;
}

bool augment(int l, const std::vector<std::vector<int>>& adjacency,
             const std::vector<std::uint64_t>& capacity, std::vector<int>& match,
             std::vector<std::vector<int>>& holders, std::vector<char>& seen) {
  for (int r : adjacency[l]) {
    if (seen[r]) continue;
    seen[r] = 1;
    if (holders[r].size() < capacity[r]) {
      holders[r].push_back(l);
      match[l] = r;
      return true;
    }
    for (int& other : holders[r]) {
      if (augment(other, adjacency, capacity, match, holders, seen)) {
        other = l;
        match[l] = r;
        return true;
      }
    }
  }
  return false;
}

}  // namespace

int capacitated_matching(int left, const std::vector<std::vector<int>>& adjacency,
                         const std::vector<std::uint64_t>& capacity, std::vector<int>& match) {
  match.assign(left, -1);
  std::vector<std::vector<int>> holders(capacity.size());
  int matched = 0;
  for (int l = 0; l < left; ++l) {
    std::vector<char> seen(capacity.size(), 0);
    if (augment(l, adjacency, capacity, match, holders, seen)) ++matched;
  }
  return matched;
}

OracleResult oracle_maxcut(const Graph& g) {
  guard(g);
  OracleResult r;
  r.optimum = -1;
  const std::uint32_t total = 1u << g.n();
  for (std::uint32_t s = 0; s < total; ++s) {
    ++r.enumerated;
    std::int64_t cut = 0;
    for (const Edge& e : g.edges()) cut += ((s >> e.u) ^ (s >> e.v)) & 1u;
    if (cut > r.optimum) {
      r.optimum = cut;
      r.side.assign(g.n(), 0);
      for (int v = 0; v < g.n(); ++v) r.side[v] = (s >> v) & 1u;
    }
  }
  return r;
}

// Minimum edge dominating set = min over vertex covers C of |C| - ν(G[C]).
OracleResult oracle_eds(const Graph& g) {
  guard(g);
  const int n = g.n();
  const std::vector<std::uint32_t> adj = adjacency_masks(g);
  const std::uint32_t total = 1u << n;
  // nu[mask] = maximum matching size of G[mask].
  std::vector<std::uint8_t> nu(total, 0);
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    const int v = std::countr_zero(mask);
    const std::uint32_t rest = mask & ~(1u << v);
    int best = nu[rest];
    for (std::uint32_t m = adj[v] & rest; m; m &= m - 1) {
      const int u = std::countr_zero(m);
      best = std::max(best, 1 + nu[rest & ~(1u << u)]);
    }
    nu[mask] = static_cast<std::uint8_t>(best);
  }
  OracleResult r;
  r.optimum = std::numeric_limits<std::int64_t>::max();
  std::uint32_t best_cover = 0;
  for (std::uint32_t c = 0; c < total; ++c) {
    ++r.enumerated;
    bool cover = true;
    for (const Edge& e : g.edges()) {
      if (!((c >> e.u) & 1u) && !((c >> e.v) & 1u)) {
        cover = false;
        break;
      }
    }
    if (!cover) continue;
    const std::int64_t value = std::popcount(c) - nu[c];
    if (value < r.optimum) {
      r.optimum = value;
      best_cover = c;
    }
  }
  // Witness: a maximum matching of G[C] read back from nu, then one edge per
  // unmatched cover vertex.
  std::uint32_t mask = best_cover;
  std::vector<char> matched(n, 0);
  while (mask) {
    const int v = std::countr_zero(mask);
    const std::uint32_t rest = mask & ~(1u << v);
    if (nu[mask] == nu[rest]) {
      mask = rest;
      continue;
    }
    for (std::uint32_t m = adj[v] & rest; m; m &= m - 1) {
      const int u = std::countr_zero(m);
      if (nu[mask] == 1 + nu[rest & ~(1u << u)]) {
        r.edges.push_back(g.edge_index(v, u));
        matched[v] = matched[u] = 1;
        mask = rest & ~(1u << u);
        break;
      }
    }
  }
  for (int v : bits(best_cover)) {
    if (!matched[v] && !g.neighbors(v).empty()) r.edges.push_back(g.edge_index(v, g.neighbors(v)[0]));
  }
  std::sort(r.edges.begin(), r.edges.end());
  r.edges.erase(std::unique(r.edges.begin(), r.edges.end()), r.edges.end());
  r.selected = bits(best_cover);
  return r;
}

OracleResult oracle_eqcolor(const Graph& g, int k) {
  guard(g);
  if (k < 1) throw DomainError("number of colors must be at least 1");
  const int n = g.n();
  OracleResult r;
  r.feasible = false;
  r.ratio = std::numeric_limits<double>::infinity();
  std::vector<int> color(n, -1);
  std::vector<std::int64_t> sizes(k, 0);
  std::int64_t best_hi = 0;
  std::int64_t best_lo = 0;
  // Ratios are compared as fractions hi/lo; lo = 0 means infinite.
  auto better = [&](std::int64_t hi, std::int64_t lo) {
    if (!r.feasible) return true;
    if (lo == 0) return best_lo == 0 && hi < best_hi;
    if (best_lo == 0) return true;
    return hi * best_lo < best_hi * lo;
  };
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      ++r.enumerated;
      const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
      if (better(*hi, *lo)) {
        r.feasible = true;
        best_hi = *hi;
        best_lo = *lo;
        r.color = color;
        r.class_sizes = sizes;
      }
      return;
    }
    for (int q = 0; q < k; ++q) {
      bool ok = true;
      for (int u : g.neighbors(v)) {
        if (u < v && color[u] == q) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      color[v] = q;
      ++sizes[q];
      rec(v + 1);
      --sizes[q];
      color[v] = -1;
    }
  };
  rec(0);
  if (r.feasible) {
    r.optimum = best_hi;
    r.ratio = best_lo == 0 ? std::numeric_limits<double>::infinity()
                           : static_cast<double>(best_hi) / static_cast<double>(best_lo);
  }
  return r;
}

OracleResult oracle_cds(const Graph& g, int max_vertices) {
  if (max_vertices > kOracleHardMaxVertices) {
    throw LimitError("oracle limit cannot exceed " + std::to_string(kOracleHardMaxVertices));
  }
  guard(g, max_vertices);
  const int n = g.n();
  OracleResult r;
  r.feasible = false;
  const std::uint32_t total = 1u << n;
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (std::uint32_t s = 0; s < total; ++s) {
    ++r.enumerated;
    std::uint64_t cost = 0;
    for (int v : bits(s)) cost += g.cost(v);
    if (cost >= best) continue;
    std::vector<int> clients;
    for (int v = 0; v < n; ++v) {
      if (!((s >> v) & 1u)) clients.push_back(v);
    }
    std::vector<std::vector<int>> adjacency(clients.size());
    for (std::size_t i = 0; i < clients.size(); ++i) {
      for (int u : g.neighbors(clients[i])) {
        if ((s >> u) & 1u) adjacency[i].push_back(u);
      }
    }
    std::vector<std::uint64_t> capacity(n, 0);
    for (int v : bits(s)) capacity[v] = g.capacity(v);
    std::vector<int> match;
    const int got = capacitated_matching(static_cast<int>(clients.size()), adjacency, capacity, match);
    if (got != static_cast<int>(clients.size())) continue;
    best = cost;
    r.feasible = true;
    r.selected = bits(s);
    r.dominator.assign(n, kSelfDominated);
    for (std::size_t i = 0; i < clients.size(); ++i) r.dominator[clients[i]] = match[i];
  }
  if (r.feasible) r.optimum = static_cast<std::int64_t>(best);
  return r;
}

OracleResult oracle_cvc(const Graph& g) {
  guard(g);
  const int n = g.n();
  OracleResult r;
  r.feasible = false;
  const std::uint32_t total = 1u << n;
  int best = n + 1;
  for (std::uint32_t c = 0; c < total; ++c) {
    ++r.enumerated;
    const int size = std::popcount(c);
    if (size >= best) continue;
    std::vector<std::vector<int>> adjacency(g.m());
    bool cover = true;
    for (int id = 0; id < g.m() && cover; ++id) {
      const Edge& e = g.edges()[id];
      if ((c >> e.u) & 1u) adjacency[id].push_back(e.u);
      if ((c >> e.v) & 1u) adjacency[id].push_back(e.v);
      cover = !adjacency[id].empty();
    }
    if (!cover) continue;
    std::vector<std::uint64_t> capacity(n, 0);
    for (int v : bits(c)) capacity[v] = g.capacity(v);
    std::vector<int> match;
    if (capacitated_matching(g.m(), adjacency, capacity, match) != g.m()) continue;
    best = size;
    r.feasible = true;
    r.selected = bits(c);
    r.owner = match;
  }
  if (r.feasible) r.optimum = best;
  return r;
}

OracleResult oracle_bdd(const Graph& g, int max_degree) {
  guard(g);
  if (max_degree < 0) throw DomainError("degree bound must be nonnegative");
  const int n = g.n();
  const std::vector<std::uint32_t> adj = adjacency_masks(g);
  OracleResult r;
  int best = n + 1;
  const std::uint32_t total = 1u << n;
  for (std::uint32_t d = 0; d < total; ++d) {
    ++r.enumerated;
    const int size = std::popcount(d);
    if (size >= best) continue;
    const std::uint32_t keep = ~d & (total - 1);
    bool ok = true;
    for (int v : bits(keep)) {
      if (std::popcount(adj[v] & keep) > max_degree) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    best = size;
    r.selected = bits(d);
  }
  r.optimum = best;
  return r;
}

OracleResult oracle_mmo(const Graph& g) {
  guard(g);
  if (g.m() > kOracleMaxEdgesMmo) {
    throw LimitError("orientation oracle limited to " + std::to_string(kOracleMaxEdgesMmo) +
                     " edges");
  }
  OracleResult r;
  r.optimum = std::numeric_limits<std::int64_t>::max();
  const std::uint32_t total = 1u << g.m();
  std::vector<std::int64_t> out(g.n());
  for (std::uint32_t s = 0; s < total; ++s) {
    ++r.enumerated;
    std::fill(out.begin(), out.end(), 0);
    for (int id = 0; id < g.m(); ++id) {
      const Edge& e = g.edges()[id];
      out[((s >> id) & 1u) ? e.v : e.u] += static_cast<std::int64_t>(e.weight);
    }
    const std::int64_t worst = g.n() == 0 ? 0 : *std::max_element(out.begin(), out.end());
    if (worst < r.optimum) {
      r.optimum = worst;
      r.tail.assign(g.m(), 0);
      for (int id = 0; id < g.m(); ++id) {
        r.tail[id] = ((s >> id) & 1u) ? g.edges()[id].v : g.edges()[id].u;
      }
    }
  }
  return r;
}

}  // namespace widthapx
