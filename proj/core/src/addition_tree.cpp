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

#include "widthapx/addition_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <thread>
#include <utility>

#include "text_util.hpp"
#include "widthapx/errors.hpp"

namespace widthapx {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double log_sum(double a, double b, double log_base) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp((lo - hi) * log_base)) / log_base;
}

}  // namespace

int AdditionTree::add_leaf(std::uint64_t input) {
  nodes_.push_back(AdditionNode{true, input, -1, -1});
  return static_cast<int>(nodes_.size()) - 1;
}

int AdditionTree::add_internal(int child1, int child2) {
  nodes_.push_back(AdditionNode{false, 0, child1, child2});
  return static_cast<int>(nodes_.size()) - 1;
}

int AdditionTree::leaf_count() const {
  int count = 0;
  for (const AdditionNode& n : nodes_) count += n.leaf ? 1 : 0;
  return count;
}

void AdditionTree::validate() const {
  const int n = size();
  if (n == 0) throw ValidationError("addition tree is empty");
  if (root_ < 0 || root_ >= n) throw ValidationError("addition tree root out of range");
  std::vector<int> parents(n, 0);
  for (int v = 0; v < n; ++v) {
    const AdditionNode& node = nodes_[v];
    if (node.leaf) continue;
    for (int c : {node.child1, node.child2}) {
      if (c < 0 || c >= n) {
        throw ValidationError("node " + std::to_string(v + 1) + " has a missing child");
      }
      ++parents[c];
    }
    if (node.child1 == node.child2) {
      throw ValidationError("node " + std::to_string(v + 1) + " uses one child twice");
    }
  }
  if (parents[root_] != 0) throw ValidationError("root has a parent");
  for (int v = 0; v < n; ++v) {
    if (v != root_ && parents[v] != 1) {
      throw ValidationError("node " + std::to_string(v + 1) + " has " +
                            std::to_string(parents[v]) + " parents");
    }
  }
  // With one parent per non-root node, reachability of all nodes rules out cycles.
  if (static_cast<int>(post_order().size()) != n) {
    throw ValidationError("addition tree is not connected to its root");
  }
}

std::vector<int> AdditionTree::post_order() const {
  std::vector<int> order;
  if (root_ < 0) return order;
  order.reserve(nodes_.size());
  std::vector<std::pair<int, bool>> stack{{root_, false}};
  std::vector<char> seen(nodes_.size(), 0);
  while (!stack.empty()) {
    auto [v, expanded] = stack.back();
    stack.pop_back();
    const AdditionNode& node = nodes_[v];
    if (expanded || node.leaf) {
      order.push_back(v);
      continue;
    }
    if (seen[v]) continue;  // cycle guard for unvalidated input
    seen[v] = 1;
    stack.emplace_back(v, true);
    stack.emplace_back(node.child2, false);
    stack.emplace_back(node.child1, false);
  }
  return order;
}

std::vector<int> AdditionTree::subtree_heights() const {
  std::vector<int> height(nodes_.size(), 0);
  for (int v : post_order()) {
    const AdditionNode& node = nodes_[v];
    if (!node.leaf) height[v] = 1 + std::max(height[node.child1], height[node.child2]);
  }
  return height;
}

AdditionTree AdditionTree::caterpillar(std::span<const std::uint64_t> leaves) {
  if (leaves.empty()) throw DomainError("a tree needs at least one leaf");
  AdditionTree tree;
  int spine = tree.add_leaf(leaves[0]);
  for (std::size_t i = 1; i < leaves.size(); ++i) {
    const int leaf = tree.add_leaf(leaves[i]);
    spine = tree.add_internal(spine, leaf);
  }
  tree.set_root(spine);
  return tree;
}

namespace {

// Splits leaves recursively; `pick(count)` returns the left part's size in
// [1, count-1].
template <typename Pick>
AdditionTree build_by_split(std::span<const std::uint64_t> leaves, Pick pick) {
  if (leaves.empty()) throw DomainError("a tree needs at least one leaf");
  AdditionTree tree;
  struct Frame {
    std::size_t lo, hi;
    int left = -1;
    int stage = 0;
  };
  std::vector<Frame> stack{{0, leaves.size()}};
  int result = -1;
  std::size_t split_at = 0;
  std::vector<std::size_t> mid_stack;
  while (!stack.empty()) {
    Frame& f = stack.back();
    const std::size_t count = f.hi - f.lo;
    if (count == 1) {
      result = tree.add_leaf(leaves[f.lo]);
      stack.pop_back();
      continue;
    }
    if (f.stage == 0) {
      split_at = f.lo + pick(count);
      mid_stack.push_back(split_at);
      f.stage = 1;
      stack.push_back(Frame{f.lo, split_at});
    } else if (f.stage == 1) {
      f.left = result;
      f.stage = 2;
      const std::size_t mid = mid_stack.back();
      stack.push_back(Frame{mid, f.hi});
    } else {
      mid_stack.pop_back();
      result = tree.add_internal(f.left, result);
      stack.pop_back();
    }
  }
  tree.set_root(result);
  return tree;
}

}  // namespace

AdditionTree AdditionTree::balanced(std::span<const std::uint64_t> leaves) {
  return build_by_split(leaves, [](std::size_t count) { return count / 2; });
}

AdditionTree AdditionTree::random_split(std::span<const std::uint64_t> leaves, double bias,
                                        std::uint64_t seed) {
  if (bias < 0 || bias > 1) throw DomainError("bias must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  return build_by_split(leaves, [&](std::size_t count) {
    const std::size_t half = count / 2;
    const double t = bias * detail::uniform_unit(rng);
    const std::size_t k = 1 + static_cast<std::size_t>(std::floor(t * static_cast<double>(half)));
    return std::min(k, count - 1);
  });
}

AdditionTree AdditionTree::parse(std::string_view text) {
  const std::vector<detail::Line> lines = detail::tokenize(text);
  if (lines.empty() || lines[0].tokens[0] != "at") {
    throw ParseError(lines.empty() ? 0 : lines[0].number, "missing 'at <numNodes>' header");
  }
  detail::expect_arity(lines[0], 2);
  const std::int64_t count = detail::to_int(lines[0].tokens[1], lines[0].number);
  if (count < 1) throw ParseError(lines[0].number, "tree needs at least one node");
  AdditionTree tree;
  tree.nodes_.assign(static_cast<std::size_t>(count), AdditionNode{});
  std::vector<char> defined(static_cast<std::size_t>(count), 0);
  bool have_root = false;
  auto node_id = [&](std::string_view token, int line) {
    const std::int64_t id = detail::to_int(token, line);
    if (id < 1 || id > count) throw ParseError(line, "node id out of range");
    return static_cast<int>(id - 1);
  };
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const detail::Line& line = lines[i];
    if (line.tokens[0] == "root") {
      detail::expect_arity(line, 2);
      if (have_root) throw ParseError(line.number, "duplicate root line");
      tree.root_ = node_id(line.tokens[1], line.number);
      have_root = true;
      continue;
    }
    if (line.tokens.size() < 2) throw ParseError(line.number, "malformed node line");
    const int id = node_id(line.tokens[0], line.number);
    if (defined[id]) throw ParseError(line.number, "node defined twice");
    defined[id] = 1;
    if (line.tokens[1] == "leaf") {
      detail::expect_arity(line, 3);
      const std::int64_t x = detail::to_int(line.tokens[2], line.number);
      if (x < 0) throw ParseError(line.number, "leaf inputs must be nonnegative");
      tree.nodes_[id] = AdditionNode{true, static_cast<std::uint64_t>(x), -1, -1};
    } else if (line.tokens[1] == "add") {
      detail::expect_arity(line, 4);
      tree.nodes_[id] = AdditionNode{false, 0, node_id(line.tokens[2], line.number),
                                     node_id(line.tokens[3], line.number)};
    } else {
      throw ParseError(line.number, "unknown node kind '" + std::string(line.tokens[1]) + "'");
    }
  }
  for (std::int64_t v = 0; v < count; ++v) {
    if (!defined[v]) throw ParseError(0, "node " + std::to_string(v + 1) + " never defined");
  }
  if (!have_root) throw ParseError(0, "missing root line");
  tree.validate();
  return tree;
}

std::string AdditionTree::render() const {
  std::ostringstream out;
  out << "at " << nodes_.size() << "\n";
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    const AdditionNode& n = nodes_[v];
    if (n.leaf) {
      out << v + 1 << " leaf " << n.input << "\n";
    } else {
      out << v + 1 << " add " << n.child1 + 1 << " " << n.child2 + 1 << "\n";
    }
  }
  out << "root " << root_ + 1 << "\n";
  return out.str();
}

bool operator==(const AdditionTree& a, const AdditionTree& b) {
  if (a.root_ != b.root_ || a.nodes_.size() != b.nodes_.size()) return false;
  for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
    const AdditionNode& x = a.nodes_[i];
    const AdditionNode& y = b.nodes_[i];
    if (x.leaf != y.leaf || x.input != y.input || x.child1 != y.child1 ||
        x.child2 != y.child2) {
      return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> eval_exact(const AdditionTree& tree) {
  std::vector<std::uint64_t> y(tree.size(), 0);
  for (int v : tree.post_order()) {
    const AdditionNode& node = tree.node(v);
    if (node.leaf) {
      y[v] = node.input;
    } else {
      const std::uint64_t a = y[node.child1];
      const std::uint64_t b = y[node.child2];
      if (a > std::numeric_limits<std::uint64_t>::max() - b) {
        throw DomainError("exact addition tree value overflows 64 bits");
      }
      y[v] = a + b;
    }
  }
  return y;
}

std::vector<int> balanced_height(const AdditionTree& tree) {
  std::vector<int> bh(tree.size(), 0);
  for (int v : tree.post_order()) {
    const AdditionNode& node = tree.node(v);
    if (node.leaf) continue;
    const int a = bh[node.child1];
    const int b = bh[node.child2];
    bh[v] = a == b ? a + 1 : std::max(a, b);
  }
  return bh;
}

double TreeEvaluation::approx_value(int node) const {
  const double l = log_approx[node];
  if (l == kNegInf) return 0.0;
  return std::exp(l * std::log1p(delta));
}

TreeEvaluation eval_approx(const AdditionTree& tree, const RoundingContext& ctx,
                           std::uint64_t stream_id) {
  if (!(ctx.delta() > 0)) throw DomainError("addition tree evaluation needs delta > 0");
  const double lb = std::log1p(ctx.delta());
  TreeEvaluation ev;
  ev.delta = ctx.delta();
  ev.exact = eval_exact(tree);
  const int n = tree.size();
  ev.log_approx.assign(n, kNegInf);
  ev.is_power.assign(n, false);
  ev.lambda.assign(n, kNaN);
  auto log_of = [&](std::uint64_t y) {
    return y == 0 ? kNegInf : std::log(static_cast<double>(y)) / lb;
  };
  for (int v : tree.post_order()) {
    const AdditionNode& node = tree.node(v);
    const std::uint64_t y = ev.exact[v];
    if (node.leaf) {
      if (y == 0) continue;
      const double l = log_of(y);
      ev.log_approx[v] = l;
      ev.is_power[v] = std::abs(l - std::round(l)) < ctx.snap_tolerance();
      ev.lambda[v] = 0.0;
      continue;
    }
    const int c1 = node.child1;
    const int c2 = node.child2;
    if (ctx.exact()) {
      ev.log_approx[v] = log_of(y);
      ev.is_power[v] = true;
      if (y > 0) ev.lambda[v] = 0.0;
    } else {
      const double la = log_sum(ev.log_approx[c1], ev.log_approx[c2], lb);
      if (la == kNegInf) continue;  // 0 ⊕ 0 = 0
      double snapped = std::abs(la - std::round(la)) < ctx.snap_tolerance() ? std::round(la) : la;
      RandomStream stream(ctx.seed(), make_stream_id({stream_id, static_cast<std::uint64_t>(v)}));
      const std::optional<ApproxValue> z = round_log(la, ctx, stream);
      if (!z) throw DomainError("addition tree value exceeds the rounding cap");
      ev.log_approx[v] = static_cast<double>(z->exponent());
      ev.is_power[v] = true;
      ev.lambda[v] = ev.log_approx[v] - log_of(y);
      StepRecord step;
      step.node = v;
      step.log_initial = la;
      step.up_probability = snapped - std::floor(snapped);
      const double l1 = ev.lambda[c1];
      const double l2 = ev.lambda[c2];
      // Order by |λ| descending; NaN (y = 0) sorts last.
      const bool swap = std::isnan(l1) ? !std::isnan(l2)
                                       : (!std::isnan(l2) && std::abs(l2) > std::abs(l1));
      step.child1 = swap ? c2 : c1;
      step.child2 = swap ? c1 : c2;
      step.lambda1 = ev.lambda[step.child1];
      step.lambda2 = ev.lambda[step.child2];
      ev.steps.push_back(step);
      continue;
    }
    if (y > 0) {
      StepRecord step;
      step.node = v;
      step.log_initial = ev.log_approx[v];
      step.child1 = c1;
      step.child2 = c2;
      step.lambda1 = ev.lambda[c1];
      step.lambda2 = ev.lambda[c2];
      ev.steps.push_back(step);
    }
  }
  return ev;
}

ErrorProfile error_profile(const TreeEvaluation& eval) {
  ErrorProfile profile;
  profile.lambda = eval.lambda;
  for (double l : eval.lambda) {
    if (!std::isnan(l)) profile.max_abs_error = std::max(profile.max_abs_error, std::abs(l));
  }
  profile.max_ratio = std::exp(profile.max_abs_error * std::log1p(eval.delta));
  return profile;
}

std::vector<LemmaViolation> check_step_lemmas(const TreeEvaluation& eval) {
  std::vector<LemmaViolation> out;
  const double delta = eval.delta;
  const double lb = std::log1p(delta);
  for (const StepRecord& s : eval.steps) {
    const int v = s.node;
    const double p = s.up_probability;
    // Lemma: the smaller operand is not negligible against a power-valued one.
    const int kids[2] = {s.child1, s.child2};
    for (int order = 0; order < 2; ++order) {
      const int u1 = kids[order];
      const int u2 = kids[1 - order];
      if (!eval.is_power[u1] || eval.log_approx[u1] == kNegInf) continue;
      const double z1 = eval.approx_value(u1);
      const double z2 = eval.approx_value(u2);
      const double rhs = 0.5 * delta * p * z1;
      if (z2 < rhs * (1.0 - 1e-9)) {
        out.push_back(LemmaViolation{"operand-size", v, z2, rhs, s});
      }
    }
    if (std::isnan(s.lambda1) || std::isnan(s.lambda2)) continue;
    const double m = std::max(std::abs(s.lambda1), std::abs(s.lambda2));
    if (!(m < 1.0 / (4.0 * delta))) continue;
    const double y = static_cast<double>(eval.exact[v]);
    const double lhs = std::abs(s.log_initial - std::log(y) / lb);
    const double rhs = m - delta * p * std::abs(s.lambda1 - s.lambda2) / 20.0;
    if (lhs > rhs + 1e-9 * std::max(1.0, m)) {
      out.push_back(LemmaViolation{"self-correction", v, lhs, rhs, s});
    }
  }
  return out;
}

std::vector<LemmaViolation> check_tree_invariants(const AdditionTree& tree,
                                                  const TreeEvaluation& eval) {
  std::vector<LemmaViolation> out;
  const std::vector<int> height = tree.subtree_heights();
  for (int v : tree.post_order()) {
    const bool z_zero = eval.log_approx[v] == kNegInf;
    const bool y_zero = eval.exact[v] == 0;
    if (z_zero != y_zero) {
      out.push_back(LemmaViolation{"zero-equivalence", v, z_zero ? 0.0 : 1.0,
                                   y_zero ? 0.0 : 1.0, {}});
    }
    const double l = eval.lambda[v];
    if (!std::isnan(l) && std::abs(l) > height[v] + 1 + 1e-9) {
      out.push_back(LemmaViolation{"depth-bound", v, std::abs(l),
                                   static_cast<double>(height[v] + 1), {}});
    }
  }
  const int bh = balanced_height(tree)[tree.root()];
  const double nodes = static_cast<double>(tree.post_order().size());
  if (nodes < std::ldexp(1.0, bh)) {
    out.push_back(LemmaViolation{"balanced-height", tree.root(), nodes, std::ldexp(1.0, bh), {}});
  }
  return out;
}

std::string_view to_string(TreeShape shape) {
  switch (shape) {
    case TreeShape::kCaterpillar:
      return "caterpillar";
    case TreeShape::kBalanced:
      return "balanced";
    case TreeShape::kRandom:
      return "random";
    case TreeShape::kFromFile:
      return "fromFile";
  }
  return "?";
}

TreeShape parse_tree_shape(std::string_view text) {
  if (text == "caterpillar") return TreeShape::kCaterpillar;
  if (text == "balanced") return TreeShape::kBalanced;
  if (text == "random") return TreeShape::kRandom;
  if (text == "fromFile" || text == "file") return TreeShape::kFromFile;
  throw DomainError("unknown tree shape '" + std::string(text) + "'");
}

double ConcentrationReport::tail_fraction(double eps) const {
  if (rows.empty()) return 0.0;
  int count = 0;
  for (const TrialResult& r : rows) count += r.max_ratio > 1.0 + eps ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(rows.size());
}

double ConcentrationReport::lambda_tail_fraction(double lambda) const {
  if (rows.empty()) return 0.0;
  int count = 0;
  for (const TrialResult& r : rows) count += r.max_abs_error > lambda ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(rows.size());
}

double ConcentrationReport::max_abs_error() const {
  double m = 0;
  for (const TrialResult& r : rows) m = std::max(m, r.max_abs_error);
  return m;
}

int ConcentrationReport::total_violations() const {
  int total = 0;
  for (const TrialResult& r : rows) total += r.violations;
  return total;
}

double caterpillar_tail_bound(double nodes, double delta, double lambda) {
  return 2.0 * nodes * nodes * std::exp(-lambda * std::sqrt(delta) / 20.0);
}

double tree_tail_bound(double nodes, int h, double delta, double lambda) {
  return (h + 1) * std::pow(nodes, h + 1) * std::exp(-lambda * std::sqrt(delta) / 20.0);
}

ConcentrationReport simulate_concentration(const ConcentrationConfig& config,
                                           const RoundingContext& ctx) {
  if (config.trials < 1) throw DomainError("at least one trial is required");
  if (config.shape == TreeShape::kFromFile && config.fixed_tree == nullptr) {
    throw DomainError("fromFile shape needs a tree");
  }
  if (config.shape != TreeShape::kFromFile && config.leaves < 1) {
    throw DomainError("tree size must be at least 1");
  }
  if (config.max_input < 1) throw DomainError("max input must be at least 1");
  RoundingContext trial_ctx = ctx;
  trial_ctx.set_cap_value(std::numeric_limits<double>::infinity());

  ConcentrationReport report;
  report.rows.resize(config.trials);
  auto run_trial = [&](int t) {
    const std::uint64_t trial_seed = make_stream_id({ctx.seed(), static_cast<std::uint64_t>(t)});
    AdditionTree generated;
    const AdditionTree* tree = config.fixed_tree;
    if (config.shape != TreeShape::kFromFile) {
      std::mt19937_64 rng(trial_seed);
      std::vector<std::uint64_t> inputs(config.leaves);
      for (auto& x : inputs) x = 1 + detail::uniform_below(rng, config.max_input);
      switch (config.shape) {
        case TreeShape::kCaterpillar:
          generated = AdditionTree::caterpillar(inputs);
          break;
        case TreeShape::kBalanced:
          generated = AdditionTree::balanced(inputs);
          break;
        default:
          generated = AdditionTree::random_split(inputs, config.bias, rng());
          break;
      }
      tree = &generated;
    }
    const TreeEvaluation ev = eval_approx(*tree, trial_ctx, trial_seed);
    const ErrorProfile profile = error_profile(ev);
    TrialResult row;
    row.trial = t;
    row.nodes = tree->size();
    row.height = tree->subtree_heights()[tree->root()];
    row.balanced_height = balanced_height(*tree)[tree->root()];
    row.max_abs_error = profile.max_abs_error;
    row.max_ratio = profile.max_ratio;
    row.violations = static_cast<int>(check_step_lemmas(ev).size() +
                                      check_tree_invariants(*tree, ev).size());
    report.rows[t] = row;
  };
  const int threads = std::max(1, std::min(config.threads, config.trials));
  if (threads == 1) {
    for (int t = 0; t < config.trials; ++t) run_trial(t);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (int t = w; t < config.trials; t += threads) run_trial(t);
      });
    }
    for (auto& th : pool) th.join();
  }
  return report;
}

}  // namespace widthapx
