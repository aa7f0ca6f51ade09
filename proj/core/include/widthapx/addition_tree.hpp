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

// Addition trees: full binary trees whose internal nodes add their children,
// evaluated exactly and with the rounding operator, plus the per-step error
// checks and the Monte-Carlo concentration harness built on them.

#ifndef WIDTHAPX_ADDITION_TREE_HPP_
#define WIDTHAPX_ADDITION_TREE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "widthapx/rounding.hpp"

namespace widthapx {

struct AdditionNode {
  bool leaf = true;
  std::uint64_t input = 0;  // leaves only
  int child1 = -1;          // internal only
  int child2 = -1;
};

class AdditionTree {
 public:
  AdditionTree() = default;

  int add_leaf(std::uint64_t input);
  int add_internal(int child1, int child2);
  void set_root(int root) { root_ = root; }

  // Full binary, acyclic, single root, every non-root node has one parent.
  // Throws ValidationError.
  void validate() const;

  int root() const { return root_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  int leaf_count() const;
  const AdditionNode& node(int id) const { return nodes_[id]; }
  // Children precede parents; only nodes reachable from the root.
  std::vector<int> post_order() const;
  // Height of the subtree rooted at each node (leaves: 0).
  std::vector<int> subtree_heights() const;

  // The tree is built as ((x0 + x1) + x2) + ... .
  static AdditionTree caterpillar(std::span<const std::uint64_t> leaves);
  // Leaves split as evenly as possible at every node.
  static AdditionTree balanced(std::span<const std::uint64_t> leaves);
  // Recursive split with the left part drawn uniformly from
  // {1, ..., 1 + ⌊bias·U·⌊L/2⌋⌋}. bias 0 yields a caterpillar.
  static AdditionTree random_split(std::span<const std::uint64_t> leaves, double bias,
                                   std::uint64_t seed);

  // Text form: `at <numNodes>`, `<id> leaf <x>` / `<id> add <c1> <c2>`,
  // `root <id>`. Ids are 1-based.
  static AdditionTree parse(std::string_view text);
  std::string render() const;

  friend bool operator==(const AdditionTree& a, const AdditionTree& b);

 private:
  std::vector<AdditionNode> nodes_;
  int root_ = -1;
};

// y_v for every node. Throws DomainError on 64-bit overflow.
std::vector<std::uint64_t> eval_exact(const AdditionTree& tree);

// Balanced height: 0 at leaves, max of the children, plus one on ties.
std::vector<int> balanced_height(const AdditionTree& tree);

// One internal node, children ordered so that |λ_child1| ≥ |λ_child2|.
struct StepRecord {
  int node = -1;
  int child1 = -1;
  int child2 = -1;
  double log_initial = 0;  // log_{1+δ} a_v, a_v = z_child1 + z_child2
  double up_probability = 0;
  double lambda1 = 0;
  double lambda2 = 0;
};

struct TreeEvaluation {
  double delta = 0;
  std::vector<std::uint64_t> exact;  // y_v
  // log_{1+δ} z_v; -inf where z_v = 0.
  std::vector<double> log_approx;
  // True where z_v is an integer power of 1+δ (internal nodes and leaves
  // whose input already is one).
  std::vector<bool> is_power;
  // λ_v = log_{1+δ}(z_v / y_v); NaN where y_v = 0.
  std::vector<double> lambda;
  std::vector<StepRecord> steps;

  double approx_value(int node) const;
};

// Leaves keep z_l = x_l; internal nodes apply ⊕, drawing from stream
// (ctx.seed(), make_stream_id({stream_id, node})). Exact mode reproduces y.
TreeEvaluation eval_approx(const AdditionTree& tree, const RoundingContext& ctx,
                           std::uint64_t stream_id = 0);

struct ErrorProfile {
  std::vector<double> lambda;  // NaN where undefined
  double max_abs_error = 0;
  double max_ratio = 1;  // (1+δ)^max_abs_error = max over v of max{z/y, y/z}
};

ErrorProfile error_profile(const TreeEvaluation& eval);

struct LemmaViolation {
  std::string check;
  int node = -1;
  double lhs = 0;
  double rhs = 0;
  StepRecord step;
};

// Per-step inequalities: z_u2 ≥ ½·δ·p_v·z_u1 (for every child order with
// z_u1 a power of 1+δ), and the self-correction bound
// |log(a_v/y_v)| ≤ max|λ| − δ·p_v·|λ_u1 − λ_u2|/20 when max|λ| < 1/(4δ).
std::vector<LemmaViolation> check_step_lemmas(const TreeEvaluation& eval);

// Always-true properties: |λ_v| ≤ height(v) + 1, z_v = 0 ⟺ y_v = 0 and
// size ≥ 2^bh(root).
std::vector<LemmaViolation> check_tree_invariants(const AdditionTree& tree,
                                                  const TreeEvaluation& eval);

enum class TreeShape { kCaterpillar, kBalanced, kRandom, kFromFile };

std::string_view to_string(TreeShape shape);
TreeShape parse_tree_shape(std::string_view text);

struct ConcentrationConfig {
  TreeShape shape = TreeShape::kCaterpillar;
  int leaves = 1000;
  std::uint64_t max_input = 100;  // leaf inputs uniform on {1, ..., max_input}
  double bias = 1.0;              // random shape only
  const AdditionTree* fixed_tree = nullptr;  // kFromFile
  int trials = 1;
  int threads = 1;
};

struct TrialResult {
  int trial = 0;
  int nodes = 0;
  int height = 0;
  int balanced_height = 0;
  double max_abs_error = 0;
  double max_ratio = 1;
  int violations = 0;  // step lemmas plus always-true invariants
};

struct ConcentrationReport {
  std::vector<TrialResult> rows;

  int trials() const { return static_cast<int>(rows.size()); }
  // Fraction of trials with max{z/y, y/z} > 1 + eps somewhere.
  double tail_fraction(double eps) const;
  // Fraction of trials with max |λ_v| > lambda.
  double lambda_tail_fraction(double lambda) const;
  double max_abs_error() const;
  int total_violations() const;
};

// 2n²·exp(−λ√δ/20): bound on P(∃v: |λ_v| > λ) when bh(root) ≤ 1.
double caterpillar_tail_bound(double nodes, double delta, double lambda);
// (h+1)·n^(h+1)·exp(−λ√δ/20): bound on P(∃v: |λ_v| > λh) for bh(root) = h.
double tree_tail_bound(double nodes, int h, double delta, double lambda);

// Trial t draws its leaf inputs from seed make_stream_id({ctx.seed(), t}) and
// its rounding stream from the same id, so rows do not depend on threads.
ConcentrationReport simulate_concentration(const ConcentrationConfig& config,
                                           const RoundingContext& ctx);

}  // namespace widthapx

#endif  // WIDTHAPX_ADDITION_TREE_HPP_
