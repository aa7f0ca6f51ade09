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

// Exhaustive solvers for small instances. They share nothing with the table
// code and serve as ground truth.

#ifndef WIDTHAPX_ORACLES_HPP_
#define WIDTHAPX_ORACLES_HPP_

#include <cstdint>
#include <vector>

#include "widthapx/graph.hpp"

namespace widthapx {

constexpr int kOracleMaxVertices = 16;
constexpr int kOracleMaxEdgesMmo = 20;
// Ceiling for callers that raise the vertex limit explicitly.
constexpr int kOracleHardMaxVertices = 24;

struct OracleResult {
  bool feasible = true;
  std::int64_t optimum = 0;
  std::uint64_t enumerated = 0;

  std::vector<int> side;                  // maxcut
  std::vector<int> edges;                 // eds
  std::vector<int> color;                 // eqcolor
  std::vector<std::int64_t> class_sizes;  // eqcolor
  double ratio = 0;                       // eqcolor: best max/min, inf if a class must be empty
  std::vector<int> selected;              // cds, cvc, bdd (deleted vertices)
  std::vector<int> dominator;             // cds
  std::vector<int> owner;                 // cvc
  std::vector<int> tail;                  // mmo
};

// All throw LimitError above kOracleMaxVertices (or kOracleMaxEdgesMmo edges).
OracleResult oracle_maxcut(const Graph& g);
OracleResult oracle_eds(const Graph& g);
// optimum is the largest class of the best coloring.
OracleResult oracle_eqcolor(const Graph& g, int k);
// Minimum total cost; capacities and costs from g. max_vertices may be raised
// up to kOracleHardMaxVertices.
OracleResult oracle_cds(const Graph& g, int max_vertices = kOracleMaxVertices);
OracleResult oracle_cvc(const Graph& g);
OracleResult oracle_bdd(const Graph& g, int max_degree);
OracleResult oracle_mmo(const Graph& g);

// Maximum number of left vertices matched to right neighbours when right
// vertex r accepts at most capacity[r] of them. match[l] is -1 if unmatched.
int capacitated_matching(int left, const std::vector<std::vector<int>>& adjacency,
                         const std::vector<std::uint64_t>& capacity, std::vector<int>& match);

}  // namespace widthapx

#endif  // WIDTHAPX_ORACLES_HPP_
