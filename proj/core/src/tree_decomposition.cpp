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

#include "widthapx/tree_decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "text_util.hpp"
#include "widthapx/errors.hpp"

namespace widthapx {

int TreeDecomposition::add_bag(std::vector<int> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  bags_.push_back(std::move(vertices));
  return num_bags() - 1;
}

void TreeDecomposition::add_tree_edge(int a, int b) { edges_.emplace_back(a, b); }

int TreeDecomposition::max_bag_size() const {
  std::size_t best = 0;
  for (const auto& b : bags_) best = std::max(best, b.size());
  return static_cast<int>(best);
}

void TreeDecomposition::validate() const {
  const int k = num_bags();
  if (k == 0) {
    if (n_ > 0) throw ValidationError("vertex coverage: decomposition has no bags");
    return;
  }
  if (static_cast<int>(edges_.size()) != k - 1) {
    throw ValidationError("tree shape: " + std::to_string(k) + " bags need " +
                          std::to_string(k - 1) + " tree edges, found " +
                          std::to_string(edges_.size()));
  }
  std::vector<std::vector<int>> adj(k);
  for (auto [a, b] : edges_) {
    if (a < 0 || b < 0 || a >= k || b >= k) {
      throw ValidationError("tree shape: tree edge names a missing bag");
    }
    if (a == b) throw ValidationError("tree shape: self-loop at bag " + std::to_string(a + 1));
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> seen(k, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int t = stack.back();
    stack.pop_back();
    for (int s : adj[t]) {
      if (!seen[s]) {
        seen[s] = 1;
        ++reached;
        stack.push_back(s);
      }
    }
  }
  if (reached != k) throw ValidationError("tree shape: bag graph is not connected (has a cycle)");

  std::vector<int> occurrences(n_, 0);
  for (int t = 0; t < k; ++t) {
    for (int v : bags_[t]) {
      if (v < 0 || v >= n_) {
        throw ValidationError("bag " + std::to_string(t + 1) + " names vertex " +
                              std::to_string(v + 1) + " outside 1.." + std::to_string(n_));
      }
      ++occurrences[v];
    }
  }
  for (int v = 0; v < n_; ++v) {
    if (occurrences[v] == 0) {
      throw ValidationError("vertex coverage: vertex " + std::to_string(v + 1) + " is in no bag");
    }
  }
  // In a tree, the bags holding v are connected iff they span occurrences-1 tree edges.
  std::vector<int> inner(n_, 0);
  for (auto [a, b] : edges_) {
    const auto& x = bags_[a];
    const auto& y = bags_[b];
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.size() && j < y.size()) {
      if (x[i] < y[j]) {
        ++i;
      } else if (y[j] < x[i]) {
        ++j;
      } else {
        ++inner[x[i]];
        ++i;
        ++j;
      }
    }
  }
  for (int v = 0; v < n_; ++v) {
    if (inner[v] != occurrences[v] - 1) {
      throw ValidationError("connected subtree: bags containing vertex " + std::to_string(v + 1) +
                            " are not connected");
    }
  }
}

void TreeDecomposition::validate_against(const Graph& g) const {
  if (g.n() != n_) {
    throw ValidationError("decomposition is over " + std::to_string(n_) + " vertices, graph has " +
                          std::to_string(g.n()));
  }
  validate();
  std::vector<std::vector<int>> where(n_);
  for (int t = 0; t < num_bags(); ++t) {
    for (int v : bags_[t]) where[v].push_back(t);
  }
  for (const Edge& e : g.edges()) {
    const auto& a = where[e.u];
    const auto& b = where[e.v];
    std::size_t i = 0;
    std::size_t j = 0;
    bool found = false;
    while (i < a.size() && j < b.size() && !found) {
      if (a[i] < b[j]) {
        ++i;
      } else if (b[j] < a[i]) {
        ++j;
      } else {
        found = true;
      }
    }
    if (!found) {
      throw ValidationError("edge coverage: edge (" + std::to_string(e.u + 1) + "," +
                            std::to_string(e.v + 1) + ") is in no bag");
    }
  }
}

TreeDecomposition TreeDecomposition::parse(std::string_view text) {
  const std::vector<detail::Line> lines = detail::tokenize(text);
  if (lines.empty() || lines[0].tokens[0] != "s") {
    throw ParseError(lines.empty() ? 0 : lines[0].number,
                     "missing 's td <bags> <maxBagSize> <n>' header");
  }
  const detail::Line& header = lines[0];
  detail::expect_arity(header, 5);
  if (header.tokens[1] != "td") throw ParseError(header.number, "expected 's td'");
  const std::int64_t k = detail::to_int(header.tokens[2], header.number);
  const std::int64_t declared_max = detail::to_int(header.tokens[3], header.number);
  const std::int64_t n = detail::to_int(header.tokens[4], header.number);
  if (k < 0 || n < 0 || n > (1 << 24) || k > (1 << 24)) {
    throw ParseError(header.number, "header counts out of range");
  }
  TreeDecomposition td(static_cast<int>(n));
  td.bags_.assign(static_cast<std::size_t>(k), {});
  std::vector<char> defined(static_cast<std::size_t>(k), 0);
  auto bag_id = [&](std::string_view token, int line) {
    const std::int64_t id = detail::to_int(token, line);
    if (id < 1 || id > k) throw ParseError(line, "bag id " + std::string(token) + " out of range");
    return static_cast<int>(id - 1);
  };
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const detail::Line& line = lines[i];
    if (line.tokens[0] == "b") {
      if (line.tokens.size() < 2) throw ParseError(line.number, "expected 'b <id> <v...>'");
      const int id = bag_id(line.tokens[1], line.number);
      if (defined[id]) throw ParseError(line.number, "bag defined twice");
      defined[id] = 1;
      std::vector<int> vertices;
      for (std::size_t j = 2; j < line.tokens.size(); ++j) {
        const std::int64_t v = detail::to_int(line.tokens[j], line.number);
        if (v < 1 || v > n) {
          throw ParseError(line.number, "vertex " + std::string(line.tokens[j]) + " out of range");
        }
        vertices.push_back(static_cast<int>(v - 1));
      }
      const std::size_t raw = vertices.size();
      std::sort(vertices.begin(), vertices.end());
      vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
      if (vertices.size() != raw) throw ParseError(line.number, "bag repeats a vertex");
      td.bags_[id] = std::move(vertices);
    } else {
      detail::expect_arity(line, 2);
      td.edges_.emplace_back(bag_id(line.tokens[0], line.number),
                             bag_id(line.tokens[1], line.number));
    }
  }
  for (std::int64_t id = 0; id < k; ++id) {
    if (!defined[id]) throw ParseError(0, "bag " + std::to_string(id + 1) + " never defined");
  }
  if (td.max_bag_size() != declared_max) {
    throw ParseError(header.number, "header declares max bag size " +
                                        std::to_string(declared_max) + ", found " +
                                        std::to_string(td.max_bag_size()));
  }
  td.validate();
  return td;
}

std::string TreeDecomposition::render() const {
  std::ostringstream out;
  out << "s td " << bags_.size() << " " << max_bag_size() << " " << n_ << "\n";
  for (std::size_t t = 0; t < bags_.size(); ++t) {
    out << "b " << t + 1;
    for (int v : bags_[t]) out << " " << v + 1;
    out << "\n";
  }
  for (auto [a, b] : edges_) out << a + 1 << " " << b + 1 << "\n";
  return out.str();
}

bool operator==(const TreeDecomposition& a, const TreeDecomposition& b) {
  return a.n_ == b.n_ && a.bags_ == b.bags_ && a.edges_ == b.edges_;
}

int NiceDecomposition::add_node(NiceNode node) {
  nodes_.push_back(std::move(node));
  return size() - 1;
}

std::vector<int> NiceDecomposition::post_order() const {
  std::vector<int> order;
  if (root_ < 0) return order;
  order.reserve(nodes_.size());
  std::vector<std::pair<int, bool>> stack{{root_, false}};
  while (!stack.empty()) {
    auto [v, expanded] = stack.back();
    stack.pop_back();
    const NiceNode& node = nodes_[v];
    if (expanded || node.kind == NiceKind::kLeaf) {
      order.push_back(v);
      continue;
    }
    stack.emplace_back(v, true);
    if (node.kind == NiceKind::kJoin) stack.emplace_back(node.child2, false);
    stack.emplace_back(node.child1, false);
  }
  return order;
}

int NiceDecomposition::height() const {
  std::vector<int> h(nodes_.size(), 0);
  for (int id : post_order()) {
    const NiceNode& n = nodes_[id];
    if (n.kind == NiceKind::kLeaf) continue;
    h[id] = 1 + h[n.child1];
    if (n.kind == NiceKind::kJoin) h[id] = std::max(h[id], 1 + h[n.child2]);
  }
  return root_ < 0 ? 0 : h[root_];
}

int NiceDecomposition::width() const {
  std::size_t best = 0;
  for (const NiceNode& n : nodes_) best = std::max(best, n.bag.size());
  return static_cast<int>(best) - 1;
}

void NiceDecomposition::validate(const Graph* g) const {
  if (root_ < 0 || root_ >= size()) throw ValidationError("nice decomposition has no root");
  if (!nodes_[root_].bag.empty()) throw ValidationError("nice decomposition root bag is not empty");
  std::vector<int> parents(nodes_.size(), 0);
  for (int id = 0; id < size(); ++id) {
    const NiceNode& n = nodes_[id];
    const std::string where = "nice node " + std::to_string(id + 1) + ": ";
    if (!std::is_sorted(n.bag.begin(), n.bag.end())) throw ValidationError(where + "unsorted bag");
    auto child = [&](int c) -> const NiceNode& {
      if (c < 0 || c >= size()) throw ValidationError(where + "missing child");
      ++parents[c];
      return nodes_[c];
    };
    switch (n.kind) {
      case NiceKind::kLeaf:
        if (!n.bag.empty()) throw ValidationError(where + "leaf bag is not empty");
        break;
      case NiceKind::kIntroduce: {
        std::vector<int> expect = child(n.child1).bag;
        if (std::binary_search(expect.begin(), expect.end(), n.vertex)) {
          throw ValidationError(where + "introduced vertex already in child bag");
        }
        expect.insert(std::lower_bound(expect.begin(), expect.end(), n.vertex), n.vertex);
        if (expect != n.bag) throw ValidationError(where + "introduce changes more than one vertex");
        break;
      }
      case NiceKind::kForget: {
        std::vector<int> expect = child(n.child1).bag;
        auto it = std::lower_bound(expect.begin(), expect.end(), n.vertex);
        if (it == expect.end() || *it != n.vertex) {
          throw ValidationError(where + "forgotten vertex not in child bag");
        }
        expect.erase(it);
        if (expect != n.bag) throw ValidationError(where + "forget changes more than one vertex");
        break;
      }
      case NiceKind::kJoin:
        if (child(n.child1).bag != n.bag || child(n.child2).bag != n.bag) {
          throw ValidationError(where + "join children have different bags");
        }
        break;
    }
  }
  for (int id = 0; id < size(); ++id) {
    if (parents[id] != (id == root_ ? 0 : 1)) {
      throw ValidationError("nice node " + std::to_string(id + 1) + " is not used exactly once");
    }
  }
  const TreeDecomposition plain = to_tree_decomposition();
  if (g) {
    plain.validate_against(*g);
  } else {
    plain.validate();
  }
}

TreeDecomposition NiceDecomposition::to_tree_decomposition() const {
  TreeDecomposition td(n_);
  for (const NiceNode& n : nodes_) td.add_bag(n.bag);
  for (int id = 0; id < size(); ++id) {
    const NiceNode& n = nodes_[id];
    if (n.child1 >= 0) td.add_tree_edge(id, n.child1);
    if (n.child2 >= 0) td.add_tree_edge(id, n.child2);
  }
  return td;
}

namespace {

// Chain from a node with bag `from` to one with bag `to`: forgets first, so no
// intermediate bag is larger than either end.
int morph(NiceDecomposition& out, int node, const std::vector<int>& to) {
  std::vector<int> bag = out.node(node).bag;
  std::vector<int> drop;
  std::vector<int> add;
  std::set_difference(bag.begin(), bag.end(), to.begin(), to.end(), std::back_inserter(drop));
  std::set_difference(to.begin(), to.end(), bag.begin(), bag.end(), std::back_inserter(add));
  for (int v : drop) {
    bag.erase(std::lower_bound(bag.begin(), bag.end(), v));
    NiceNode n;
    n.kind = NiceKind::kForget;
    n.vertex = v;
    n.child1 = node;
    n.bag = bag;
    node = out.add_node(std::move(n));
  }
  for (int v : add) {
    bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
    NiceNode n;
    n.kind = NiceKind::kIntroduce;
    n.vertex = v;
    n.child1 = node;
    n.bag = bag;
    node = out.add_node(std::move(n));
  }
  return node;
}

}  // namespace

NiceDecomposition make_nice(const TreeDecomposition& td) {
  NiceDecomposition out;
  out.set_vertex_count(td.vertex_count());
  const int k = td.num_bags();
  if (k == 0) {
    out.set_root(out.add_node(NiceNode{}));
    return out;
  }
  std::vector<std::vector<int>> adj(k);
  for (auto [a, b] : td.tree_edges()) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  // Root at bag 0; order[] lists bags so that parents precede children.
  std::vector<int> parent(k, -1);
  std::vector<int> order{0};
  std::vector<char> seen(k, 0);
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int s : adj[order[i]]) {
      if (!seen[s]) {
        seen[s] = 1;
        parent[s] = order[i];
        order.push_back(s);
      }
    }
  }
  std::vector<std::vector<int>> children(k);
  for (int t : order) {
    if (parent[t] >= 0) children[parent[t]].push_back(t);
  }
  std::vector<int> top(k, -1);  // nice node whose bag equals bag t
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int t = *it;
    const std::vector<int>& bag = td.bag(t);
    std::vector<int> parts;
    for (int c : children[t]) parts.push_back(morph(out, top[c], bag));
    if (parts.empty()) parts.push_back(morph(out, out.add_node(NiceNode{}), bag));
    // Balanced join tree over the parts.
    while (parts.size() > 1) {
      std::vector<int> next;
      for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
        NiceNode j;
        j.kind = NiceKind::kJoin;
        j.child1 = parts[i];
        j.child2 = parts[i + 1];
        j.bag = bag;
        next.push_back(out.add_node(std::move(j)));
      }
      if (parts.size() % 2 == 1) next.push_back(parts.back());
      parts = std::move(next);
    }
    top[t] = parts[0];
  }
  out.set_root(morph(out, top[0], {}));
  return out;
}

bool height_warning(const NiceDecomposition& ntd) {
  const double n = std::max(2, ntd.vertex_count());
  return ntd.height() > 4.0 * std::log2(n);
}

}  // namespace widthapx
