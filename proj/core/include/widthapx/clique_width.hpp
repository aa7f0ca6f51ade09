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

// Clique-width expressions over labels 0..w-1 (1-based in text form).
// Introduce nodes name the graph vertex they create.

#ifndef WIDTHAPX_CLIQUE_WIDTH_HPP_
#define WIDTHAPX_CLIQUE_WIDTH_HPP_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "widthapx/graph.hpp"

namespace widthapx {

enum class CwOp { kIntroduce, kUnion, kJoin, kRename };

struct CwNode {
  CwOp op = CwOp::kIntroduce;
  int label = -1;   // introduce
  int vertex = -1;  // introduce
  int child1 = -1;  // union: both; join/rename: child1
  int child2 = -1;
  int label1 = -1;  // join: the two joined labels; rename: label1 → label2
  int label2 = -1;
};

class CwExpression {
 public:
  CwExpression() = default;
  explicit CwExpression(int width) : width_(width) {}

  int add_introduce(int label, int vertex);
  int add_union(int child1, int child2);
  int add_join(int child, int label1, int label2);
  int add_rename(int child, int from, int to);
  void set_root(int root) { root_ = root; }

  int width() const { return width_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  int root() const { return root_; }
  const CwNode& node(int id) const { return nodes_[id]; }
  // Number of introduce nodes.
  int vertex_count() const;
  std::vector<int> post_order() const;
  // Longest root-to-leaf path, in edges.
  int height() const;

  // Labels in range, tree shape, each vertex introduced once, and every join
  // adds at least one edge, none of them already present. Throws
  // ValidationError naming the offending node.
  void validate() const;

  // |V_l| after each node: sizes[node][label].
  std::vector<std::vector<int>> label_sizes() const;
  // Vertices carrying each label after `node`, in introduce order.
  std::vector<std::vector<int>> label_classes(int node) const;
  // The edge set the expression builds (u < v).
  std::vector<std::pair<int, int>> build_edges() const;

  // `cwd <w> <numNodes>`, node lines `<id> i <label> <vertex>`,
  // `<id> u <c1> <c2>`, `<id> j <c> <l1> <l2>`, `<id> r <c> <l1> <l2>`,
  // `root <id>`. Validates on parse.
  static CwExpression parse(std::string_view text);
  std::string render() const;

  friend bool operator==(const CwExpression& a, const CwExpression& b);

 private:
  int add(CwNode node);

  int width_ = 0;
  std::vector<CwNode> nodes_;
  int root_ = -1;
};

struct CwValidationReport {
  bool ok = true;
  std::vector<std::pair<int, int>> missing;  // in the graph, not built
  std::vector<std::pair<int, int>> extra;    // built, not in the graph
  std::vector<int> unintroduced;             // graph vertices never introduced
  std::string message;
};

// Rebuilds the edge set and compares it with g exactly.
CwValidationReport validate_cw_against_graph(const CwExpression& expr, const Graph& g);

}  // namespace widthapx

#endif  // WIDTHAPX_CLIQUE_WIDTH_HPP_
