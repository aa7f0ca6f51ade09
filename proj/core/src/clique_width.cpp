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

#include "widthapx/clique_width.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "text_util.hpp"
#include "widthapx/errors.hpp"

namespace widthapx {

namespace {

std::uint64_t pair_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

std::string node_name(int id) { return "node " + std::to_string(id + 1); }

// Replays the expression bottom-up, moving label classes from children to
// parents. `on_join(node, class1, class2)` sees the classes at each join.
template <typename OnJoin>
std::vector<std::vector<int>> replay(const CwExpression& expr, int upto, OnJoin on_join) {
  const int w = expr.width();
  std::vector<std::vector<std::vector<int>>> classes(expr.size());
  for (int id : expr.post_order()) {
    const CwNode& node = expr.node(id);
    std::vector<std::vector<int>> here;
    switch (node.op) {
      case CwOp::kIntroduce:
        here.assign(w, {});
        here[node.label].push_back(node.vertex);
        break;
      case CwOp::kUnion: {
        here = std::move(classes[node.child1]);
        auto& other = classes[node.child2];
        for (int l = 0; l < w; ++l) {
          here[l].insert(here[l].end(), other[l].begin(), other[l].end());
        }
        other.clear();
        break;
      }
      case CwOp::kJoin:
        here = std::move(classes[node.child1]);
        on_join(id, here[node.label1], here[node.label2]);
        break;
      case CwOp::kRename: {
        here = std::move(classes[node.child1]);
        auto& from = here[node.label1];
        auto& to = here[node.label2];
        to.insert(to.end(), from.begin(), from.end());
        from.clear();
        break;
      }
    }
    if (id == upto) return here;
    classes[id] = std::move(here);
  }
  return {};
}

}  // namespace

int CwExpression::add(CwNode node) {
  nodes_.push_back(node);
  return static_cast<int>(nodes_.size()) - 1;
}

int CwExpression::add_introduce(int label, int vertex) {
  CwNode n;
  n.op = CwOp::kIntroduce;
  n.label = label;
  n.vertex = vertex;
  return add(n);
}

int CwExpression::add_union(int child1, int child2) {
  CwNode n;
  n.op = CwOp::kUnion;
  n.child1 = child1;
  n.child2 = child2;
  return add(n);
}

int CwExpression::add_join(int child, int label1, int label2) {
  CwNode n;
  n.op = CwOp::kJoin;
  n.child1 = child;
  n.label1 = label1;
  n.label2 = label2;
  return add(n);
}

int CwExpression::add_rename(int child, int from, int to) {
  CwNode n;
  n.op = CwOp::kRename;
  n.child1 = child;
  n.label1 = from;
  n.label2 = to;
  return add(n);
}

int CwExpression::vertex_count() const {
  int count = 0;
  for (const CwNode& n : nodes_) count += n.op == CwOp::kIntroduce ? 1 : 0;
  return count;
}

std::vector<int> CwExpression::post_order() const {
  std::vector<int> order;
  if (root_ < 0) return order;
  std::vector<std::pair<int, bool>> stack{{root_, false}};
  std::vector<char> seen(nodes_.size(), 0);
  while (!stack.empty()) {
    auto [v, expanded] = stack.back();
    stack.pop_back();
    const CwNode& node = nodes_[v];
    if (expanded || node.op == CwOp::kIntroduce) {
      order.push_back(v);
      continue;
    }
    if (seen[v]) continue;
    seen[v] = 1;
    stack.emplace_back(v, true);
    if (node.op == CwOp::kUnion) stack.emplace_back(node.child2, false);
    stack.emplace_back(node.child1, false);
  }
  return order;
}

int CwExpression::height() const {
  std::vector<int> h(nodes_.size(), 0);
  for (int id : post_order()) {
    const CwNode& n = nodes_[id];
    if (n.op == CwOp::kIntroduce) continue;
    h[id] = 1 + h[n.child1];
    if (n.op == CwOp::kUnion) h[id] = std::max(h[id], 1 + h[n.child2]);
  }
  return root_ < 0 ? 0 : h[root_];
}

void CwExpression::validate() const {
  const int count = size();
  if (width_ < 1) throw ValidationError("clique-width expression needs at least one label");
  if (count == 0) throw ValidationError("clique-width expression is empty");
  if (root_ < 0 || root_ >= count) throw ValidationError("root out of range");
  auto check_label = [&](int id, int label) {
    if (label < 0 || label >= width_) {
      throw ValidationError(node_name(id) + ": label " + std::to_string(label + 1) +
                            " outside 1.." + std::to_string(width_));
    }
  };
  std::vector<int> parents(count, 0);
  std::unordered_set<int> vertices;
  for (int id = 0; id < count; ++id) {
    const CwNode& n = nodes_[id];
    auto check_child = [&](int c) {
      if (c < 0 || c >= count) throw ValidationError(node_name(id) + ": missing child");
      ++parents[c];
    };
    switch (n.op) {
      case CwOp::kIntroduce:
        check_label(id, n.label);
        if (n.vertex < 0) throw ValidationError(node_name(id) + ": bad vertex id");
        if (!vertices.insert(n.vertex).second) {
          throw ValidationError(node_name(id) + ": vertex " + std::to_string(n.vertex + 1) +
                                " introduced twice");
        }
        break;
      case CwOp::kUnion:
        check_child(n.child1);
        check_child(n.child2);
        if (n.child1 == n.child2) throw ValidationError(node_name(id) + ": union of a node with itself");
        break;
      case CwOp::kJoin:
      case CwOp::kRename:
        check_child(n.child1);
        check_label(id, n.label1);
        check_label(id, n.label2);
        if (n.label1 == n.label2) {
          throw ValidationError(node_name(id) + ": operation needs two distinct labels");
        }
        break;
    }
  }
  if (parents[root_] != 0) throw ValidationError("root is used as a child");
  for (int id = 0; id < count; ++id) {
    if (id != root_ && parents[id] != 1) {
      throw ValidationError(node_name(id) + " is used as a child " + std::to_string(parents[id]) +
                            " times (cycle or shared subexpression)");
    }
  }
  if (static_cast<int>(post_order().size()) != count) {
    throw ValidationError("expression contains a cycle or unreachable nodes");
  }
  std::unordered_set<std::uint64_t> edges;
  replay(*this, -1, [&](int id, const std::vector<int>& a, const std::vector<int>& b) {
    if (a.empty() || b.empty()) {
      throw ValidationError(node_name(id) + ": join adds no edges (empty label class)");
    }
    for (int u : a) {
      for (int v : b) {
        if (!edges.insert(pair_key(u, v)).second) {
          throw ValidationError(node_name(id) + ": join re-adds edge (" + std::to_string(u + 1) +
                                "," + std::to_string(v + 1) + "); joined labels must be non-adjacent");
        }
      }
    }
  });
}

std::vector<std::vector<int>> CwExpression::label_sizes() const {
  std::vector<std::vector<int>> sizes(nodes_.size(), std::vector<int>(width_, 0));
  for (int id : post_order()) {
    const CwNode& n = nodes_[id];
    auto& s = sizes[id];
    switch (n.op) {
      case CwOp::kIntroduce:
        s[n.label] = 1;
        break;
      case CwOp::kUnion:
        for (int l = 0; l < width_; ++l) s[l] = sizes[n.child1][l] + sizes[n.child2][l];
        break;
      case CwOp::kJoin:
        s = sizes[n.child1];
        break;
      case CwOp::kRename:
        s = sizes[n.child1];
        s[n.label2] += s[n.label1];
        s[n.label1] = 0;
        break;
    }
  }
  return sizes;
}

std::vector<std::vector<int>> CwExpression::label_classes(int node) const {
  return replay(*this, node, [](int, const std::vector<int>&, const std::vector<int>&) {});
}

std::vector<std::pair<int, int>> CwExpression::build_edges() const {
  std::vector<std::pair<int, int>> out;
  replay(*this, -1, [&](int, const std::vector<int>& a, const std::vector<int>& b) {
    for (int u : a) {
      for (int v : b) out.emplace_back(std::min(u, v), std::max(u, v));
    }
  });
  std::sort(out.begin(), out.end());
  return out;
}

CwExpression CwExpression::parse(std::string_view text) {
  const std::vector<detail::Line> lines = detail::tokenize(text);
  if (lines.empty() || lines[0].tokens[0] != "cwd") {
    throw ParseError(lines.empty() ? 0 : lines[0].number, "missing 'cwd <w> <numNodes>' header");
  }
  detail::expect_arity(lines[0], 3);
  const std::int64_t w = detail::to_int(lines[0].tokens[1], lines[0].number);
  const std::int64_t count = detail::to_int(lines[0].tokens[2], lines[0].number);
  if (w < 1) throw ParseError(lines[0].number, "width must be at least 1");
  if (count < 1) throw ParseError(lines[0].number, "expression needs at least one node");
  CwExpression expr(static_cast<int>(w));
  expr.nodes_.assign(static_cast<std::size_t>(count), CwNode{});
  std::vector<char> defined(static_cast<std::size_t>(count), 0);
  bool have_root = false;
  auto id_of = [&](std::string_view token, int line) {
    const std::int64_t id = detail::to_int(token, line);
    if (id < 1 || id > count) throw ParseError(line, "node id out of range");
    return static_cast<int>(id - 1);
  };
  auto label_of = [&](std::string_view token, int line) {
    const std::int64_t l = detail::to_int(token, line);
    if (l < 1 || l > w) {
      throw ParseError(line, "label " + std::string(token) + " outside 1.." + std::to_string(w));
    }
    return static_cast<int>(l - 1);
  };
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const detail::Line& line = lines[i];
    if (line.tokens[0] == "root") {
      detail::expect_arity(line, 2);
      if (have_root) throw ParseError(line.number, "duplicate root line");
      expr.root_ = id_of(line.tokens[1], line.number);
      have_root = true;
      continue;
    }
    if (line.tokens.size() < 2) throw ParseError(line.number, "malformed node line");
    const int id = id_of(line.tokens[0], line.number);
    if (defined[id]) throw ParseError(line.number, "node defined twice");
    defined[id] = 1;
    CwNode& n = expr.nodes_[id];
    const std::string_view op = line.tokens[1];
    if (op == "i") {
      detail::expect_arity(line, 4);
      n.op = CwOp::kIntroduce;
      n.label = label_of(line.tokens[2], line.number);
      const std::int64_t v = detail::to_int(line.tokens[3], line.number);
      if (v < 1) throw ParseError(line.number, "vertex ids are 1-based");
      n.vertex = static_cast<int>(v - 1);
    } else if (op == "u") {
      detail::expect_arity(line, 4);
      n.op = CwOp::kUnion;
      n.child1 = id_of(line.tokens[2], line.number);
      n.child2 = id_of(line.tokens[3], line.number);
    } else if (op == "j" || op == "r") {
      detail::expect_arity(line, 5);
      n.op = op == "j" ? CwOp::kJoin : CwOp::kRename;
      n.child1 = id_of(line.tokens[2], line.number);
      n.label1 = label_of(line.tokens[3], line.number);
      n.label2 = label_of(line.tokens[4], line.number);
    } else {
      throw ParseError(line.number, "unknown operation '" + std::string(op) + "'");
    }
  }
  for (std::int64_t id = 0; id < count; ++id) {
    if (!defined[id]) throw ParseError(0, "node " + std::to_string(id + 1) + " never defined");
  }
  if (!have_root) throw ParseError(0, "missing root line");
  expr.validate();
  return expr;
}

std::string CwExpression::render() const {
  std::ostringstream out;
  out << "cwd " << width_ << " " << nodes_.size() << "\n";
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    const CwNode& n = nodes_[id];
    out << id + 1;
    switch (n.op) {
      case CwOp::kIntroduce:
        out << " i " << n.label + 1 << " " << n.vertex + 1;
        break;
      case CwOp::kUnion:
        out << " u " << n.child1 + 1 << " " << n.child2 + 1;
        break;
      case CwOp::kJoin:
        out << " j " << n.child1 + 1 << " " << n.label1 + 1 << " " << n.label2 + 1;
        break;
      case CwOp::kRename:
        out << " r " << n.child1 + 1 << " " << n.label1 + 1 << " " << n.label2 + 1;
        break;
    }
    out << "\n";
  }
  out << "root " << root_ + 1 << "\n";
  return out.str();
}

bool operator==(const CwExpression& a, const CwExpression& b) {
  if (a.width_ != b.width_ || a.root_ != b.root_ || a.nodes_.size() != b.nodes_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
    const CwNode& x = a.nodes_[i];
    const CwNode& y = b.nodes_[i];
    if (x.op != y.op || x.label != y.label || x.vertex != y.vertex || x.child1 != y.child1 ||
        x.child2 != y.child2 || x.label1 != y.label1 || x.label2 != y.label2) {
      return false;
    }
  }
  return true;
}

CwValidationReport validate_cw_against_graph(const CwExpression& expr, const Graph& g) {
  CwValidationReport report;
  std::vector<char> introduced(g.n(), 0);
  std::ostringstream msg;
  for (int id = 0; id < expr.size(); ++id) {
    const CwNode& n = expr.node(id);
    if (n.op != CwOp::kIntroduce) continue;
    if (n.vertex >= g.n()) {
      report.ok = false;
      msg << "vertex " << n.vertex + 1 << " is not in the graph; ";
      continue;
    }
    introduced[n.vertex] = 1;
  }
  for (int v = 0; v < g.n(); ++v) {
    if (!introduced[v]) report.unintroduced.push_back(v);
  }
  const std::vector<std::pair<int, int>> built = expr.build_edges();
  std::unordered_set<std::uint64_t> built_set;
  for (auto [u, v] : built) {
    built_set.insert(pair_key(u, v));
    if (!g.has_edge(u, v)) report.extra.emplace_back(u, v);
  }
  for (const Edge& e : g.edges()) {
    if (!built_set.count(pair_key(e.u, e.v))) report.missing.emplace_back(e.u, e.v);
  }
  if (!report.unintroduced.empty() || !report.missing.empty() || !report.extra.empty()) {
    report.ok = false;
  }
  for (int v : report.unintroduced) msg << "vertex " << v + 1 << " never introduced; ";
  for (auto [u, v] : report.missing) msg << "missing edge (" << u + 1 << "," << v + 1 << "); ";
  for (auto [u, v] : report.extra) msg << "extra edge (" << u + 1 << "," << v + 1 << "); ";
  report.message = report.ok ? "ok" : msg.str();
  return report;
}

}  // namespace widthapx
