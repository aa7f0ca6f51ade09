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

#ifndef WIDTHAPX_FAMILIES_HPP_
#define WIDTHAPX_FAMILIES_HPP_

#include <cstdint>
#include <optional>
#include <string_view>

#include "widthapx/clique_width.hpp"
#include "widthapx/graph.hpp"
#include "widthapx/tree_decomposition.hpp"

namespace widthapx {

enum class FamilyKind { kClique, kPath, kCycle, kStar, kCograph, kKTree, kGnp };

std::string_view to_string(FamilyKind kind);
FamilyKind parse_family_kind(std::string_view text);

struct FamilyOptions {
  int k = 2;                // ktree width
  double join_prob = 0.5;   // cograph: chance that a cotree node is a join
  double edge_prob = 0.3;   // gnp
  double keep_prob = 1.0;   // ktree: each edge survives with this chance
};

struct FamilyInstance {
  Graph graph;
  std::optional<CwExpression> cw;
  std::optional<TreeDecomposition> td;
};

// clique, path, cycle, star and gnp carry both certificates; cograph only a
// 2-label expression; ktree only a width-k decomposition.
FamilyInstance generate_family(FamilyKind kind, int n, std::uint64_t seed,
                               const FamilyOptions& options = {});

// Certificates for an arbitrary graph. The expression follows the vertex
// order and the decomposition a greedy minimum-degree elimination; neither
// tries to be tight.
CwExpression ordering_cw(const Graph& g);
TreeDecomposition elimination_td(const Graph& g);

}  // namespace widthapx

#endif  // WIDTHAPX_FAMILIES_HPP_
