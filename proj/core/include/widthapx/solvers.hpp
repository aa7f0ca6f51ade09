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

// Rounded-table solvers over clique-width expressions and nice tree
// decompositions. Every solver re-derives its reported objective from the
// witness it returns.

#ifndef WIDTHAPX_SOLVERS_HPP_
#define WIDTHAPX_SOLVERS_HPP_

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "widthapx/clique_width.hpp"
#include "widthapx/graph.hpp"
#include "widthapx/rounding.hpp"
#include "widthapx/scalar.hpp"
#include "widthapx/tree_decomposition.hpp"

namespace widthapx {

enum class Problem { kMaxCut, kEds, kEqcolor, kCds, kCvc, kBdd, kMmo };

std::string_view to_string(Problem p);
Problem parse_problem(std::string_view text);
bool supports_cw(Problem p);
bool supports_td(Problem p);

struct SolveOptions {
  int threads = 1;
  std::int64_t max_entries = 20'000'000;
};

struct Solution {
  Problem problem = Problem::kMaxCut;
  bool feasible = true;
  // Objective read off the selected root entry (rounded outside exact mode).
  double claimed = 0;
  // Objective recomputed on the graph from the witness.
  std::int64_t objective = 0;

  std::vector<int> side;                    // maxcut: 0 or 1 per vertex
  std::vector<int> edges;                   // eds: indices into g.edges()
  std::vector<int> color;                   // eqcolor: per vertex
  std::vector<std::int64_t> class_sizes;    // eqcolor
  double ratio = 0;                         // eqcolor: max/min class size, inf if a class is empty
  std::vector<int> selected;                // cds, cvc: sorted
  std::vector<int> dominator;               // cds: per vertex, see flow.hpp
  std::vector<int> owner;                   // cvc: per edge, the covering endpoint
  std::vector<int> deleted;                 // bdd: sorted
  std::vector<int> tail;                    // mmo: per edge, the vertex it leaves
  std::vector<std::array<std::int64_t, 2>> join_choices;  // (node, m) along the trace

  int undominated = 0;
  int achieved_degree = 0;
  bool guarantee_met = true;
  double capacity_ratio = 0;  // worst load/capacity over selected vertices
  TableStats stats;
};

// Clique-width solvers. The expression must build g exactly.
Solution maxcut_cw(const CwExpression& expr, const Graph& g, const RoundingContext& ctx,
                   const SolveOptions& options = {});
Solution eds_cw(const CwExpression& expr, const Graph& g, const RoundingContext& ctx,
                const SolveOptions& options = {});
Solution eqcolor_cw(const CwExpression& expr, const Graph& g, int k, const RoundingContext& ctx,
                    const SolveOptions& options = {});
// Capacities from g (absent means 0).
Solution cds_cw(const CwExpression& expr, const Graph& g, const RoundingContext& ctx,
                const SolveOptions& options = {});
Solution bdd_cw(const CwExpression& expr, const Graph& g, int max_degree,
                const RoundingContext& ctx, const SolveOptions& options = {});

// Tree-decomposition solvers over a nice decomposition of g.
Solution eqcolor_tw(const NiceDecomposition& ntd, const Graph& g, int k,
                    const RoundingContext& ctx, const SolveOptions& options = {});
// Capacities and costs from g (costs default to 1).
Solution cds_tw(const NiceDecomposition& ntd, const Graph& g, const RoundingContext& ctx,
                const SolveOptions& options = {});
Solution bdd_tw(const NiceDecomposition& ntd, const Graph& g, int max_degree,
                const RoundingContext& ctx, const SolveOptions& options = {});
// Edge weights from g; each must be at most n³.
Solution mmo_tw(const NiceDecomposition& ntd, const Graph& g, const RoundingContext& ctx,
                const SolveOptions& options = {});
// Capacities from g. Takes the plain decomposition, which is extended for the
// reduced instance before being made nice.
Solution cvc_tw(const TreeDecomposition& td, const Graph& g, const RoundingContext& ctx,
                const SolveOptions& options = {});

struct CvcReduction {
  Graph graph;               // originals 0..n-1, then one vertex per edge, then the apex
  std::vector<int> subdivision;  // per original edge
  int apex = -1;
};

// Subdivides every edge (capacity 0, cost n), adds an apex joined to all
// original vertices (capacity n, cost 0); originals keep their capacity and
// cost 1.
CvcReduction reduce_cvc_to_cds(const Graph& g);
// Adds the apex to every bag and hangs one bag {a, b, s_ab, apex} per edge.
TreeDecomposition reduce_decomposition(const TreeDecomposition& td, const Graph& g,
                                       const CvcReduction& reduction);

// Per-node ⊕-depth constant of a solver.
int depth_constant(Problem p);
// ε/(6·(D+1)·K) for a structure of height D. Throws DomainError below 1e-12.
double choose_delta_deterministic(int height, double epsilon, Problem p);
double choose_delta_deterministic(const NiceDecomposition& ntd, double epsilon, Problem p);
// ε²/(c0·(log₂ n)⁶), clamped to [1e-6, 0.49].
double randomized_delta_preset(std::int64_t n, double epsilon, double c0);

// Context with the cap a solver uses for g: (1+ε)·max(n², Σw) for MMO and
// (1+ε)·n² otherwise.
RoundingContext solver_context(Problem p, const Graph& g, RoundingMode mode, double delta,
                               double epsilon, std::uint64_t seed);

}  // namespace widthapx

#endif  // WIDTHAPX_SOLVERS_HPP_
