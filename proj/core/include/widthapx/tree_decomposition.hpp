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

#ifndef WIDTHAPX_TREE_DECOMPOSITION_HPP_
#define WIDTHAPX_TREE_DECOMPOSITION_HPP_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "widthapx/graph.hpp"

namespace widthapx {

// Bags over vertices 0..n-1; text form is PACE style with 1-based ids.
class TreeDecomposition {
 public:
  TreeDecomposition() = default;
  explicit TreeDecomposition(int vertex_count) : n_(vertex_count) {}

  // Sorts and deduplicates the bag. Returns its index.
  int add_bag(std::vector<int> vertices);
  void add_tree_edge(int a, int b);

  int vertex_count() const { return n_; }
  int num_bags() const { return static_cast<int>(bags_.size()); }
  const std::vector<int>& bag(int i) const { return bags_[i]; }
  const std::vector<std::vector<int>>& bags() const { return bags_; }
  const std::vector<std::pair<int, int>>& tree_edges() const { return edges_; }
  int max_bag_size() const;
  int width() const { return max_bag_size() - 1; }

  // Tree shape, vertex coverage and the connected-subtree property.
  void validate() const;
  // validate() plus vertex count agreement and edge coverage.
  void validate_against(const Graph& g) const;

  // `s td <numBags> <maxBagSize> <n>`, `b <id> <v...>`, `<a> <b>` tree edges.
  static TreeDecomposition parse(std::string_view text);
  std::string render() const;

  friend bool operator==(const TreeDecomposition& a, const TreeDecomposition& b);

 private:
  int n_ = 0;
  std::vector<std::vector<int>> bags_;
  std::vector<std::pair<int, int>> edges_;
};

enum class NiceKind { kLeaf, kIntroduce, kForget, kJoin };

struct NiceNode {
  NiceKind kind = NiceKind::kLeaf;
  int vertex = -1;  // introduced or forgotten vertex
  int child1 = -1;
  int child2 = -1;
  std::vector<int> bag;  // sorted
};

// Rooted binary decomposition with empty leaf and root bags.
class NiceDecomposition {
 public:
  int size() const { return static_cast<int>(nodes_.size()); }
  int root() const { return root_; }
  int vertex_count() const { return n_; }
  const NiceNode& node(int id) const { return nodes_[id]; }
  std::vector<int> post_order() const;
  int height() const;
  int width() const;

  // Node-kind rules, then the decomposition axioms on the equivalent plain
  // decomposition (and edge coverage when g is given).
  void validate(const Graph* g = nullptr) const;
  TreeDecomposition to_tree_decomposition() const;

  int add_node(NiceNode node);
  void set_root(int root) { root_ = root; }
  void set_vertex_count(int n) { n_ = n; }

 private:
  int n_ = 0;
  std::vector<NiceNode> nodes_;
  int root_ = -1;
};

// Standard canonicalization rooted at bag 0: forget-then-introduce chains along
// tree edges and balanced binary join trees at branching bags.
NiceDecomposition make_nice(const TreeDecomposition& td);

// True when the nice height exceeds 4·log₂(n).
bool height_warning(const NiceDecomposition& ntd);

}  // namespace widthapx

#endif  // WIDTHAPX_TREE_DECOMPOSITION_HPP_
