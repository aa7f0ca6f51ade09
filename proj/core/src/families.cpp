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

#include "widthapx/families.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "text_util.hpp"
#include "widthapx/errors.hpp"

namespace widthapx {

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kClique:
      return "clique";
    case FamilyKind::kPath:
      return "path";
    case FamilyKind::kCycle:
      return "cycle";
    case FamilyKind::kStar:
      return "star";
    case FamilyKind::kCograph:
      return "cograph";
    case FamilyKind::kKTree:
      return "ktree";
    case FamilyKind::kGnp:
      return "gnp";
  }
  return "?";
}

FamilyKind parse_family_kind(std::string_view text) {
  for (FamilyKind k : {FamilyKind::kClique, FamilyKind::kPath, FamilyKind::kCycle,
                       FamilyKind::kStar, FamilyKind::kCograph, FamilyKind::kKTree,
                       FamilyKind::kGnp}) {
    if (to_string(k) == text) return k;
  }
  throw DomainError("unknown family '" + std::string(text) + "'");
}

namespace {

Graph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

// Path-like chain of bags, each adjacent to the previous one.
TreeDecomposition chain(int n, const std::vector<std::vector<int>>& bags) {
  TreeDecomposition td(n);
  for (std::size_t i = 0; i < bags.size(); ++i) {
    td.add_bag(bags[i]);
    if (i > 0) td.add_tree_edge(static_cast<int>(i) - 1, static_cast<int>(i));
  }
  return td;
}

CwExpression clique_cw(int n) {
  CwExpression e(2);
  int root = e.add_introduce(0, 0);
  for (int v = 1; v < n; ++v) {
    root = e.add_union(root, e.add_introduce(1, v));
    root = e.add_join(root, 0, 1);
    root = e.add_rename(root, 1, 0);
  }
  e.set_root(root);
  return e;
}

// Labels: 0 dead, 1 the current end of the path, 2 the newcomer, 3 the
// cycle's first vertex.
CwExpression path_cw(int n, bool close) {
  CwExpression e(close ? 4 : 3);
  int root = e.add_introduce(close ? 3 : 1, 0);
  for (int v = 1; v < n; ++v) {
    root = e.add_union(root, e.add_introduce(2, v));
    if (close && v == 1) {
      root = e.add_join(root, 3, 2);
    } else {
      root = e.add_join(root, 1, 2);
      root = e.add_rename(root, 1, 0);
    }
    root = e.add_rename(root, 2, 1);
  }
  if (close) root = e.add_join(root, 1, 3);
  e.set_root(root);
  return e;
}

CwExpression star_cw(int n) {
  CwExpression e(2);
  int leaves = -1;
  for (int v = 1; v < n; ++v) {
    const int leaf = e.add_introduce(1, v);
    leaves = leaves < 0 ? leaf : e.add_union(leaves, leaf);
  }
  int root = e.add_introduce(0, 0);
  if (leaves >= 0) root = e.add_join(e.add_union(root, leaves), 0, 1);
  e.set_root(root);
  return e;
}

// Random cotree over vertices [lo, hi); every returned subexpression leaves
// all of its vertices on label 0.
int cograph_rec(CwExpression& e, int lo, int hi, double join_prob, std::mt19937_64& rng) {
  if (hi - lo == 1) return e.add_introduce(0, lo);
  const int mid = lo + 1 + static_cast<int>(detail::uniform_below(rng, hi - lo - 1));
  const bool join = detail::uniform_unit(rng) < join_prob;
  const int left = cograph_rec(e, lo, mid, join_prob, rng);
  if (!join) return e.add_union(left, cograph_rec(e, mid, hi, join_prob, rng));
  int right;
  if (hi - mid == 1) {
    right = e.add_introduce(1, mid);
  } else {
    right = e.add_rename(cograph_rec(e, mid, hi, join_prob, rng), 0, 1);
  }
  const int joined = e.add_join(e.add_union(left, right), 0, 1);
  return e.add_rename(joined, 1, 0);
}

}  // namespace

// Linear expression from the vertex order: label 0 collects vertices with no
// later neighbours, every other vertex keeps a private label until then.
CwExpression ordering_cw(const Graph& g) {
  const int n = g.n();
  std::vector<int> last(n, -1);
  for (int v = 0; v < n; ++v) {
    for (int u : g.neighbors(v)) last[v] = std::max(last[v], u);
  }
  std::vector<int> label(n, -1);
  std::vector<int> free_labels;
  int next_label = 1;
  int width = 1;
  struct Op {
    CwOp op;
    int a;
    int b;
    int c;
  };
  std::vector<Op> ops;
  for (int v = 0; v < n; ++v) {
    int lab;
    if (!free_labels.empty()) {
      lab = free_labels.back();
      free_labels.pop_back();
    } else {
      lab = next_label++;
    }
    width = std::max(width, lab + 1);
    label[v] = lab;
    ops.push_back({CwOp::kIntroduce, lab, v, 0});
    for (int u : g.neighbors(v)) {
      if (u < v) ops.push_back({CwOp::kJoin, label[u], lab, 0});
    }
    for (int u : g.neighbors(v)) {
      if (u < v && last[u] == v) {
        ops.push_back({CwOp::kRename, label[u], 0, 0});
        free_labels.push_back(label[u]);
      }
    }
    if (last[v] <= v) {
      ops.push_back({CwOp::kRename, lab, 0, 0});
      free_labels.push_back(lab);
    }
  }
  CwExpression e(width);
  int root = -1;
  for (const Op& op : ops) {
    switch (op.op) {
      case CwOp::kIntroduce: {
        const int leaf = e.add_introduce(op.a, op.b);
        root = root < 0 ? leaf : e.add_union(root, leaf);
        break;
      }
      case CwOp::kJoin:
        root = e.add_join(root, op.a, op.b);
        break;
      case CwOp::kRename:
        root = e.add_rename(root, op.a, op.b);
        break;
      case CwOp::kUnion:
        break;
    }
  }
  e.set_root(root);
  return e;
}

// Decomposition from a greedy minimum-degree elimination order.
TreeDecomposition elimination_td(const Graph& g) {
  const int n = g.n();
  std::vector<std::set<int>> adj(n);
  for (const Edge& e : g.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  std::vector<char> gone(n, 0);
  std::vector<int> position(n, -1);
  std::vector<std::vector<int>> higher(n);
  std::vector<int> order;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (!gone[v] && (best < 0 || adj[v].size() < adj[best].size())) best = v;
    }
    gone[best] = 1;
    position[best] = step;
    order.push_back(best);
    higher[best].assign(adj[best].begin(), adj[best].end());
    for (int a : higher[best]) {
      adj[a].erase(best);
      for (int b : higher[best]) {
        if (a != b) adj[a].insert(b);
      }
    }
  }
  TreeDecomposition td(n);
  for (int v : order) {
    std::vector<int> bag = higher[v];
    bag.push_back(v);
    td.add_bag(bag);
  }
  int previous_root = -1;
  for (int v : order) {
    int parent = -1;
    for (int u : higher[v]) {
      if (parent < 0 || position[u] < position[parent]) parent = u;
    }
    if (parent >= 0) {
      td.add_tree_edge(position[v], position[parent]);
    } else {
      if (previous_root >= 0) td.add_tree_edge(previous_root, position[v]);
      previous_root = position[v];
    }
  }
  return td;
}

FamilyInstance generate_family(FamilyKind kind, int n, std::uint64_t seed,
                               const FamilyOptions& options) {
  if (n < 1) throw DomainError("family size must be at least 1");
  std::mt19937_64 rng(seed);
  FamilyInstance out;
  switch (kind) {
    case FamilyKind::kClique: {
      std::vector<std::pair<int, int>> edges;
      std::vector<int> all;
      for (int v = 0; v < n; ++v) {
        all.push_back(v);
        for (int u = 0; u < v; ++u) edges.emplace_back(u, v);
      }
      out.graph = graph_from_edges(n, edges);
      out.cw = clique_cw(n);
      out.td = chain(n, {all});
      break;
    }
    case FamilyKind::kPath: {
      std::vector<std::pair<int, int>> edges;
      std::vector<std::vector<int>> bags;
      for (int v = 0; v + 1 < n; ++v) {
        edges.emplace_back(v, v + 1);
        bags.push_back({v, v + 1});
      }
      if (n == 1) bags.push_back({0});
      out.graph = graph_from_edges(n, edges);
      out.cw = path_cw(n, false);
      out.td = chain(n, bags);
      break;
    }
    case FamilyKind::kCycle: {
      if (n < 3) throw DomainError("a cycle needs at least 3 vertices");
      std::vector<std::pair<int, int>> edges;
      std::vector<std::vector<int>> bags;
      for (int v = 0; v < n; ++v) edges.emplace_back(std::min(v, (v + 1) % n), std::max(v, (v + 1) % n));
      for (int v = 1; v + 1 < n; ++v) bags.push_back({0, v, v + 1});
      out.graph = graph_from_edges(n, edges);
      out.cw = path_cw(n, true);
      out.td = chain(n, bags);
      break;
    }
    case FamilyKind::kStar: {
      std::vector<std::pair<int, int>> edges;
      std::vector<std::vector<int>> bags;
      for (int v = 1; v < n; ++v) {
        edges.emplace_back(0, v);
        bags.push_back({0, v});
      }
      if (n == 1) bags.push_back({0});
      out.graph = graph_from_edges(n, edges);
      out.cw = star_cw(n);
      out.td = chain(n, bags);
      break;
    }
    case FamilyKind::kCograph: {
      CwExpression e(2);
      e.set_root(cograph_rec(e, 0, n, options.join_prob, rng));
      out.graph = graph_from_edges(n, e.build_edges());
      out.cw = std::move(e);
      break;
    }
    case FamilyKind::kKTree: {
      const int k = options.k;
      if (k < 1) throw DomainError("ktree width must be at least 1");
      std::vector<std::pair<int, int>> edges;
      TreeDecomposition td(n);
      const int base = std::min(n, k + 1);
      std::vector<int> first;
      for (int v = 0; v < base; ++v) {
        first.push_back(v);
        for (int u = 0; u < v; ++u) edges.emplace_back(u, v);
      }
      td.add_bag(first);
      for (int v = base; v < n; ++v) {
        const int host = static_cast<int>(detail::uniform_below(rng, td.num_bags()));
        std::vector<int> clique = td.bag(host);
        clique.erase(clique.begin() + static_cast<long>(detail::uniform_below(rng, clique.size())));
        for (int u : clique) edges.emplace_back(u, v);
        clique.push_back(v);
        const int bag = td.add_bag(clique);
        td.add_tree_edge(host, bag);
      }
      if (options.keep_prob < 1.0) {
        std::vector<std::pair<int, int>> kept;
        for (auto e : edges) {
          if (detail::uniform_unit(rng) < options.keep_prob) kept.push_back(e);
        }
        edges = std::move(kept);
      }
      out.graph = graph_from_edges(n, edges);
      out.td = std::move(td);
      break;
    }
    case FamilyKind::kGnp: {
      std::vector<std::pair<int, int>> edges;
      for (int v = 0; v < n; ++v) {
        for (int u = 0; u < v; ++u) {
          if (detail::uniform_unit(rng) < options.edge_prob) edges.emplace_back(u, v);
        }
      }
      out.graph = graph_from_edges(n, edges);
      out.cw = ordering_cw(out.graph);
      out.td = elimination_td(out.graph);
      break;
    }
  }
  return out;
}

}  // namespace widthapx
