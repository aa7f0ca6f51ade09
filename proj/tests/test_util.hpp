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


// Small graph builders and certificate shortcuts shared by the tests.

#ifndef WIDTHAPX_TESTS_TEST_UTIL_HPP_
#define WIDTHAPX_TESTS_TEST_UTIL_HPP_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "widthapx/clique_width.hpp"
#include "widthapx/families.hpp"
#include "widthapx/graph.hpp"
#include "widthapx/rounding.hpp"
#include "widthapx/solvers.hpp"
#include "widthapx/tree_decomposition.hpp"

namespace widthapx::testing {

inline Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline Graph complete(int n) {
  Graph g(n);
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < v; ++u) g.add_edge(u, v);
  }
  return g;
}

inline Graph path(int n) {
  Graph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(v - 1, v);
  return g;
}

inline Graph cycle(int n) {
  Graph g = path(n);
  g.add_edge(0, n - 1);
  return g;
}

// Center 0, leaves 1..k.
inline Graph star(int k) {
  Graph g(k + 1);
  for (int v = 1; v <= k; ++v) g.add_edge(0, v);
  return g;
}

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      if (coin(rng)) g.add_edge(u, v);
    }
  }
  return g;
}

inline NiceDecomposition nice_of(const Graph& g) { return make_nice(elimination_td(g)); }

inline RoundingContext exact_ctx(Problem p, const Graph& g) {
  return solver_context(p, g, RoundingMode::kExact, 0.1, 0.25, 1);
}

inline RoundingContext det_ctx(Problem p, const Graph& g, double delta, double epsilon) {
  return solver_context(p, g, RoundingMode::kDeterministic, delta, epsilon, 1);
}

}  // namespace widthapx::testing

#endif  // WIDTHAPX_TESTS_TEST_UTIL_HPP_
