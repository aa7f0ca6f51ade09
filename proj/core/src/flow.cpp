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

#include "widthapx/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace widthapx {

MaxFlow::MaxFlow(int nodes) : nodes_(nodes), out_(nodes), level_(nodes), next_(nodes) {}

int MaxFlow::add_arc(int from, int to, std::int64_t capacity) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity});
  arcs_.push_back({from, 0});
  out_[from].push_back(id);
  out_[to].push_back(id + 1);
  return id;
}

std::int64_t MaxFlow::flow(int arc) const { return arcs_[arc + 1].cap; }

bool MaxFlow::bfs(int source, int sink) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<int> q;
  level_[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int id : out_[v]) {
      const Arc& a = arcs_[id];
      if (a.cap > 0 && level_[a.to] < 0) {
        level_[a.to] = level_[v] + 1;
        q.push(a.to);
      }
    }
  }
  return level_[sink] >= 0;
}

std::int64_t MaxFlow::dfs(int v, int sink, std::int64_t pushed) {
  if (v == sink) return pushed;
  for (std::size_t& i = next_[v]; i < out_[v].size(); ++i) {
    const int id = out_[v][i];
    Arc& a = arcs_[id];
    if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
    const std::int64_t got = dfs(a.to, sink, std::min(pushed, a.cap));
    if (got > 0) {
      a.cap -= got;
      arcs_[id ^ 1].cap += got;
      return got;
    }
  }
  return 0;
}

std::int64_t MaxFlow::run(int source, int sink) {
  std::int64_t total = 0;
  while (bfs(source, sink)) {
    std::fill(next_.begin(), next_.end(), 0);
    while (std::int64_t f = dfs(source, sink, std::numeric_limits<std::int64_t>::max())) {
      total += f;
    }
  }
  return total;
}

Assignment capacitated_assignment(const Graph& g, const std::vector<char>& selected,
                                  const std::vector<std::uint64_t>& limit) {
  const int n = g.n();
  const int source = n;
  const int sink = n + 1;
  MaxFlow net(n + 2);
  struct Link {
    int client;
    int server;
    int arc;
  };
  std::vector<Link> links;
  for (int v = 0; v < n; ++v) {
    if (selected[v]) {
      const auto cap = static_cast<std::int64_t>(std::min<std::uint64_t>(limit[v], n));
      if (cap > 0) net.add_arc(v, sink, cap);
    } else {
      net.add_arc(source, v, 1);
      for (int u : g.neighbors(v)) {
        if (selected[u]) links.push_back({v, u, net.add_arc(v, u, 1)});
      }
    }
  }
  net.run(source, sink);
  Assignment out;
  out.dominator.assign(n, kUndominated);
  for (int v = 0; v < n; ++v) {
    if (selected[v]) out.dominator[v] = kSelfDominated;
  }
  for (const Link& l : links) {
    if (net.flow(l.arc) > 0) out.dominator[l.client] = l.server;
  }
  for (int v = 0; v < n; ++v) out.undominated += out.dominator[v] == kUndominated ? 1 : 0;
  return out;
}

}  // namespace widthapx
