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

#include <algorithm>
#include <cmath>
#include <string>

#include "widthapx/errors.hpp"
#include "widthapx/solvers.hpp"

namespace widthapx {

std::string_view to_string(Problem p) {
  switch (p) {
    case Problem::kMaxCut:
      return "maxcut";
    case Problem::kEds:
      return "eds";
    case Problem::kEqcolor:
      return "eqcolor";
    case Problem::kCds:
      return "cds";
    case Problem::kCvc:
      return "cvc";
    case Problem::kBdd:
      return "bdd";
    case Problem::kMmo:
      return "mmo";
  }
  return "?";
}

Problem parse_problem(std::string_view text) {
  for (Problem p : {Problem::kMaxCut, Problem::kEds, Problem::kEqcolor, Problem::kCds,
                    Problem::kCvc, Problem::kBdd, Problem::kMmo}) {
    if (to_string(p) == text) return p;
  }
  throw DomainError("unknown problem '" + std::string(text) + "'");
}

bool supports_cw(Problem p) {
  return p != Problem::kCvc && p != Problem::kMmo;
}

bool supports_td(Problem p) {
  return p != Problem::kMaxCut && p != Problem::kEds;
}

int depth_constant(Problem p) {
  switch (p) {
    case Problem::kMaxCut:
    case Problem::kMmo:
      return 2;
    default:
      return 1;
  }
}

double choose_delta_deterministic(int height, double epsilon, Problem p) {
  if (height < 0) throw DomainError("height must be nonnegative");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  const double delta = epsilon / (6.0 * (height + 1.0) * depth_constant(p));
  if (delta < 1e-12) {
    throw DomainError("delta underflows 1e-12; rebalance the decomposition to lower its height");
  }
  return delta;
}

double choose_delta_deterministic(const NiceDecomposition& ntd, double epsilon, Problem p) {
  return choose_delta_deterministic(ntd.height(), epsilon, p);
}

double randomized_delta_preset(std::int64_t n, double epsilon, double c0) {
  if (!(c0 > 0.0)) throw DomainError("preset constant must be positive");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  const double lg = std::max(1.0, std::log2(static_cast<double>(std::max<std::int64_t>(n, 2))));
  const double delta = epsilon * epsilon / (c0 * std::pow(lg, 6));
  return std::clamp(delta, 1e-6, 0.49);
}

RoundingContext solver_context(Problem p, const Graph& g, RoundingMode mode, double delta,
                               double epsilon, std::uint64_t seed) {
  RoundingContext ctx(mode, delta, epsilon, std::max(1, g.n()), seed);
  if (p == Problem::kMmo) {
    const double n = std::max(1, g.n());
    const double cap = (1.0 + epsilon) * std::max(n * n, static_cast<double>(g.total_weight()));
    ctx.set_cap_value(cap);
  }
  return ctx;
}

CvcReduction reduce_cvc_to_cds(const Graph& g) {
  const int n = g.n();
  const int m = g.m();
  CvcReduction r;
  r.graph = Graph(n + m + 1);
  r.apex = n + m;
  std::vector<std::uint64_t> caps(n + m + 1, 0);
  std::vector<std::uint64_t> costs(n + m + 1, static_cast<std::uint64_t>(n));
  for (int v = 0; v < n; ++v) {
    caps[v] = g.capacity(v);
    costs[v] = 1;
  }
  r.subdivision.resize(m);
  for (int id = 0; id < m; ++id) {
    const Edge& e = g.edges()[id];
    const int s = n + id;
    r.subdivision[id] = s;
    r.graph.add_edge(e.u, s);
    r.graph.add_edge(e.v, s);
  }
  for (int v = 0; v < n; ++v) r.graph.add_edge(v, r.apex);
  caps[r.apex] = static_cast<std::uint64_t>(n);
  costs[r.apex] = 0;
  r.graph.set_capacities(std::move(caps));
  r.graph.set_costs(std::move(costs));
  return r;
}

TreeDecomposition reduce_decomposition(const TreeDecomposition& td, const Graph& g,
                                       const CvcReduction& reduction) {
  TreeDecomposition out(reduction.graph.n());
  for (const auto& bag : td.bags()) {
    std::vector<int> b = bag;
    b.push_back(reduction.apex);
    out.add_bag(std::move(b));
  }
  if (td.num_bags() == 0) out.add_bag({reduction.apex});
  for (const auto& [a, b] : td.tree_edges()) out.add_tree_edge(a, b);
  for (int id = 0; id < g.m(); ++id) {
    const Edge& e = g.edges()[id];
    int host = -1;
    for (int i = 0; i < td.num_bags() && host < 0; ++i) {
      const auto& bag = td.bag(i);
      if (std::binary_search(bag.begin(), bag.end(), e.u) &&
          std::binary_search(bag.begin(), bag.end(), e.v)) {
        host = i;
      }
    }
    if (host < 0) throw ValidationError("decomposition does not cover an edge");
    const int leaf = out.add_bag({e.u, e.v, reduction.subdivision[id], reduction.apex});
    out.add_tree_edge(host, leaf);
  }
  return out;
}

}  // namespace widthapx
