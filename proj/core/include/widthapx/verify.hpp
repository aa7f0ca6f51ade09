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

// Witness checks that depend on the graph alone.

#ifndef WIDTHAPX_VERIFY_HPP_
#define WIDTHAPX_VERIFY_HPP_

#include <cstdint>
#include <vector>

#include "widthapx/graph.hpp"

namespace widthapx {

// Throws ValidationError unless side is a 0/1 vector of length n.
std::int64_t cut_value(const Graph& g, const std::vector<int>& side);

bool is_edge_dominating(const Graph& g, const std::vector<int>& edges);

bool is_proper_coloring(const Graph& g, const std::vector<int>& color, int k);
std::vector<std::int64_t> color_class_sizes(const std::vector<int>& color, int k);
// max/min; infinity when some class is empty.
double class_ratio(const std::vector<std::int64_t>& sizes);

struct DominationCheck {
  bool valid = true;  // selected marks and assignments are consistent with g
  int undominated = 0;
  double capacity_ratio = 0;  // worst load/capacity, infinity on capacity 0 with load
  std::uint64_t cost = 0;
};

// dominator per vertex uses the flow.hpp encoding.
DominationCheck check_domination(const Graph& g, const std::vector<int>& selected,
                                 const std::vector<int>& dominator);

struct CoverCheck {
  bool covers = true;
  double capacity_ratio = 0;
};

// owner per edge must be an endpoint in the cover.
CoverCheck check_capacitated_cover(const Graph& g, const std::vector<int>& cover,
                                   const std::vector<int>& owner);

int residual_max_degree(const Graph& g, const std::vector<int>& deleted);

// Throws ValidationError unless tail[e] is an endpoint of edge e.
std::int64_t max_weighted_outdegree(const Graph& g, const std::vector<int>& tail);

}  // namespace widthapx

#endif  // WIDTHAPX_VERIFY_HPP_
