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

#ifndef WIDTHAPX_SRC_SOLVER_COMMON_HPP_
#define WIDTHAPX_SRC_SOLVER_COMMON_HPP_

#include <algorithm>
#include <cstdint>
#include <vector>

#include "dp_engine.hpp"
#include "widthapx/errors.hpp"
#include "widthapx/solvers.hpp"

namespace widthapx::detail {

inline EngineOptions engine_options(const SolveOptions& o) {
  EngineOptions e;
  e.threads = std::max(1, o.threads);
  e.max_entries = o.max_entries;
  return e;
}

inline Arith solver_arith(const RoundingContext& ctx) {
  ctx.require_solver_range();
  return Arith(ctx);
}

// Capacity as the DP sees it: nobody can use more than its degree.
inline std::uint64_t clamped_capacity(const Graph& g, int v) {
  return std::min<std::uint64_t>(g.capacity(v), static_cast<std::uint64_t>(g.degree(v)));
}

inline std::vector<int> mask_to_list(const std::vector<char>& mask) {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(mask.size()); ++v) {
    if (mask[v]) out.push_back(v);
  }
  return out;
}

}  // namespace widthapx::detail

#endif  // WIDTHAPX_SRC_SOLVER_COMMON_HPP_
