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

#ifndef WIDTHAPX_FLOW_HPP_
#define WIDTHAPX_FLOW_HPP_

#include <cstdint>
#include <vector>

#include "widthapx/graph.hpp"

namespace widthapx {

// Dinic's algorithm on a small directed network.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes);
  // Returns an arc handle for flow().
  int add_arc(int from, int to, std::int64_t capacity);
  std::int64_t run(int source, int sink);
  std::int64_t flow(int arc) const;

 private:
  bool bfs(int source, int sink);
  std::int64_t dfs(int v, int sink, std::int64_t pushed);

  struct Arc {
    int to;
    std::int64_t cap;
  };
  int nodes_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

constexpr int kSelfDominated = -2;
constexpr int kUndominated = -1;

struct Assignment {
  // kSelfDominated for selected vertices, kUndominated, or the dominator.
  std::vector<int> dominator;
  int undominated = 0;
};

// Maximum assignment of unselected vertices to selected neighbours with at
// most limit[s] clients on each selected s.
Assignment capacitated_assignment(const Graph& g, const std::vector<char>& selected,
                                  const std::vector<std::uint64_t>& limit);

}  // namespace widthapx

#endif  // WIDTHAPX_FLOW_HPP_
