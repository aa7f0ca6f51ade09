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

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>
#include <cmath>
#include <limits>
#include <set>

#include "solver_common.hpp"
#include "widthapx/flow.hpp"
#include "widthapx/verify.hpp"

namespace widthapx {

namespace {

using detail::CwAt;
using detail::CwProblem;
using detail::DpRun;
using detail::stream_for;

void require_matching(const CwExpression& expr, const Graph& g) {
  const CwValidationReport r = validate_cw_against_graph(expr, g);
  if (!r.ok) throw ValidationError("expression does not build the graph: " + r.message);
}

std::vector<Scalar> key_of(const DpTable& t, int e) {
  std::vector<Scalar> k;
  t.key(e, k);
  return k;
}

// Per-vertex choice stored at each introduce node on the trace.
std::vector<int> vertex_choices(const CwExpression& expr, const DpRun& run,
                                const std::vector<int>& chosen, int n) {
  std::vector<int> out(n, -1);
  for (int id = 0; id < expr.size(); ++id) {
    const CwNode& node = expr.node(id);
    if (node.op != CwOp::kIntroduce || chosen[id] < 0) continue;
    out[node.vertex] = run.tables[id].provenance(chosen[id]).choice;
  }
  return out;
}

std::vector<std::array<std::int64_t, 2>> join_choices(const CwExpression& expr, const DpRun& run,
                                                      const std::vector<int>& chosen) {
  std::vector<std::array<std::int64_t, 2>> out;
  for (int id : expr.post_order()) {
    if (expr.node(id).op != CwOp::kJoin || chosen[id] < 0) continue;
    out.push_back({id + 1, run.tables[id].provenance(chosen[id]).choice});
  }
  return out;
}

TableLayout all_rounded(int dim, Sense sense, bool rounded_objective) {
  TableLayout l;
  l.key_dim = dim;
  l.rounded.assign(dim, 1);
  l.sense = sense;
  l.rounded_objective = rounded_objective;
  return l;
}

// Component-wise ⊕ of two keys; false when a coordinate is capped.
bool add_keys(const Arith& ar, std::vector<Scalar>& a, const std::vector<Scalar>& b,
              RandomStream& st) {
  for (std::size_t d = 0; d < a.size(); ++d) {
    auto r = ar.add(a[d], b[d], st);
    if (!r) return false;
    a[d] = *r;
  }
  return true;
}

// Folds label `from` into `to` for every block of w coordinates in [0, blocks·w).
bool rename_blocks(const Arith& ar, std::vector<Scalar>& key, int w, int blocks, int from, int to,
                   RandomStream& st) {
  for (int b = 0; b < blocks; ++b) {
    const int f = b * w + from;
    const int t = b * w + to;
    auto r = ar.add(key[f], key[t], st);
    if (!r) return false;
    key[t] = *r;
    key[f] = Arith::zero();
  }
  return true;
}

Scalar exact_sum(Scalar a, Scalar b) {
  return Arith::count(a.code + b.code);
}

// ------------------------------------------------------------------ max cut
// key: l[w] then r[w]; objective: rounded cut size, maximized.
class MaxCutCw final : public CwProblem {
 public:
  MaxCutCw(int w, const Arith& ar) : w_(w), ar_(ar) {}
  TableLayout layout() const override { return all_rounded(2 * w_, Sense::kMax, true); }

  void introduce(const CwAt& at, TableBuilder& out) const override {
    std::vector<Scalar> key(2 * w_);
    key[at.op.label] = ar_.one();
    out.emit(key, Arith::zero(), {-1, -1, 0});
    key[at.op.label] = Arith::zero();
    key[w_ + at.op.label] = ar_.one();
    out.emit(key, Arith::zero(), {-1, -1, 1});
  }

  void rename(const CwAt& at, const DpTable& c, int e, TableBuilder& out) const override {
    std::vector<Scalar> key = key_of(c, e);
    RandomStream st = stream_for(ar_, at.node, e, -1, 0);
    if (!rename_blocks(ar_, key, w_, 2, at.op.label1, at.op.label2, st)) return;
    out.emit(key, c.objective(e), {e, -1, 0});
  }

  void unite(const CwAt& at, const DpTable& a, int ea, const DpTable& b, int eb,
             TableBuilder& out) const override {
    std::vector<Scalar> key = key_of(a, ea);
    RandomStream st = stream_for(ar_, at.node, ea, eb, 0);
    if (!add_keys(ar_, key, key_of(b, eb), st)) return;
    auto obj = ar_.add(a.objective(ea), b.objective(eb), st);
    if (!obj) return;
    out.emit(key, *obj, {ea, eb, 0});
  }

  void join(const CwAt& at, const DpTable& c, int e, TableBuilder& out) const override {
    const std::vector<Scalar> key = key_of(c, e);
    const int l1 = at.op.label1;
    const int l2 = at.op.label2;
    const Scalar& a1 = key[l1];
    const Scalar& b1 = key[w_ + l1];
    const Scalar& a2 = key[l2];
    const Scalar& b2 = key[w_ + l2];
    const double x = ar_.value(a1) * ar_.value(b2) + ar_.value(a2) * ar_.value(b1);
    const double xs = a1.shadow * b2.shadow + a2.shadow * b1.shadow;
    const std::uint16_t xd = std::max({a1.depth, a2.depth, b1.depth, b2.depth});
    RandomStream st = stream_for(ar_, at.node, e, -1, 0);
    auto obj = ar_.add_real(c.objective(e), x, xs, xd, st);
    if (!obj) return;
    out.emit(key, *obj, {e, -1, 0});
  }

 private:
  int w_;
  const Arith& ar_;
};

// ---------------------------------------------------- edge dominating set
// key: s[w] (rounded), F[w] (exact flag), c[w] (rounded). F marks a label
// class that is entirely selected; its s coordinate is then kept at zero and
// the class size stands in for it.
class EdsCw final : public CwProblem {
 public:
  EdsCw(int w, const Arith& ar) : w_(w), ar_(ar) {}
  TableLayout layout() const override {
    TableLayout l = all_rounded(3 * w_, Sense::kNone, false);
    for (int i = 0; i < w_; ++i) l.rounded[w_ + i] = 0;
    return l;
  }

  void introduce(const CwAt& at, TableBuilder& out) const override {
    std::vector<Scalar> key(3 * w_);
    out.emit(key, Arith::zero(), {-1, -1, 0});
    key[w_ + at.op.label] = Arith::count(1);
    out.emit(key, Arith::zero(), {-1, -1, 1});
  }

  // Combines the s/F parts of two label classes of sizes na, nb.
  bool merge_s(Scalar sa, bool fa, int na, Scalar sb, bool fb, int nb, Scalar& s, Scalar& f,
               RandomStream& st) const {
    const bool alla = fa || na == 0;
    const bool allb = fb || nb == 0;
    s = Arith::zero();
    f = Arith::zero();
    if (na + nb == 0) return true;
    if (alla && allb) {
      f = Arith::count(1);
      return true;
    }
    std::optional<Scalar> r;
    if (alla) {
      r = ar_.add_int(sb, static_cast<std::uint64_t>(na), st);
    } else if (allb) {
      r = ar_.add_int(sa, static_cast<std::uint64_t>(nb), st);
    } else {
      r = ar_.add(sa, sb, st);
    }
    if (!r) return false;
    s = *r;
    return true;
  }

  void rename(const CwAt& at, const DpTable& c, int e, TableBuilder& out) const override {
    std::vector<Scalar> key = key_of(c, e);
    const int from = at.op.label1;
    const int to = at.op.label2;
    const std::vector<int>& sz = *at.sizes1;
    RandomStream st = stream_for(ar_, at.node, e, -1, 0);
    Scalar s;
    Scalar f;
    if (!merge_s(key[from], key[w_ + from].code != 0, sz[from], key[to], key[w_ + to].code != 0,
                 sz[to], s, f, st)) {
      return;
    }
    key[to] = s;
    key[w_ + to] = f;
    key[from] = Arith::zero();
    key[w_ + from] = Arith::zero();
    auto cc = ar_.add(key[2 * w_ + from], key[2 * w_ + to], st);
    if (!cc) return;
    key[2 * w_ + to] = *cc;
    key[2 * w_ + from] = Arith::zero();
    out.emit(key, Arith::zero(), {e, -1, 0});
  }

  void unite(const CwAt& at, const DpTable& a, int ea, const DpTable& b, int eb,
             TableBuilder& out) const override {
    const std::vector<Scalar> ka = key_of(a, ea);
    const std::vector<Scalar> kb = key_of(b, eb);
    std::vector<Scalar> key(3 * w_);
    RandomStream st = stream_for(ar_, at.node, ea, eb, 0);
    for (int l = 0; l < w_; ++l) {
      if (!merge_s(ka[l], ka[w_ + l].code != 0, (*at.sizes1)[l], kb[l], kb[w_ + l].code != 0,
                   (*at.sizes2)[l], key[l], key[w_ + l], st)) {
        return;
      }
      auto cc = ar_.add(ka[2 * w_ + l], kb[2 * w_ + l], st);
      if (!cc) return;
      key[2 * w_ + l] = *cc;
    }
    out.emit(key, Arith::zero(), {ea, eb, 0});
  }

  void join(const CwAt& at, const DpTable& c, int e, TableBuilder& out) const override {
    const std::vector<Scalar> key = key_of(c, e);
    const int l1 = at.op.label1;
    const int l2 = at.op.label2;
    const bool f1 = key[w_ + l1].code != 0;
    const bool f2 = key[w_ + l2].code != 0;
    if (!f1 && !f2) return;  // not a vertex cover of the new edges
    const int n1 = at.sizes[l1];
    const int n2 = at.sizes[l2];
    auto fits = [&](const Scalar& cm, int l, bool full, int size) {
      return full ? ar_.le_slack_int(cm, size) : ar_.le_slack(cm, key[l]);
    };
    std::vector<Scalar> next = key;
    const int top = std::min(n1, n2);
    for (int m = 0; m <= top; ++m) {
      RandomStream st = stream_for(ar_, at.node, e, -1, m);
      auto c1 = ar_.add_int(key[2 * w_ + l1], static_cast<std::uint64_t>(m), st);
      auto c2 = ar_.add_int(key[2 * w_ + l2], static_cast<std::uint64_t>(m), st);
      if (!c1 || !c2) continue;
      if (!fits(*c1, l1, f1, n1) || !fits(*c2, l2, f2, n2)) {
        if (ar_.exact()) break;  // exact sums only grow with m
        continue;
      }
      next[2 * w_ + l1] = *c1;
      next[2 * w_ + l2] = *c2;
      out.emit(next, Arith::zero(), {e, -1, m});
    }
  }

 private:
  int w_;
  const Arith& ar_;
};

// ------------------------------------------------------- equitable coloring
// key: count[l·k + q] of color q inside label l.
class EqcolorCw final : public CwProblem {
 public:
  EqcolorCw(int w, int k, const Arith& ar) : w_(w), k_(k), ar_(ar) {}
  TableLayout layout() const override { return all_rounded(w_ * k_, Sense::kNone, false); }

  void introduce(const CwAt& at, TableBuilder& out) const override {
    std::vector<Scalar> key(w_ * k_);
    for (int q = 0; q < k_; ++q) {
      key[at.op.label * k_ + q] = ar_.one();
      out.emit(key, Arith::zero(), {-1, -1, q});
      key[at.op.label * k_ + q] = Arith::zero();
    }
  }

  void rename(const CwAt& at, const DpTable& c, int e, TableBuilder& out) const override {
    std::vector<Scalar> key = key_of(c, e);
    RandomStream st = stream_for(ar_, at.node, e, -1, 0);
    for (int q = 0; q < k_; ++q) {
      const int f = at.op.label1 * k_ + q;
      const int t = at.op.label2 * k_ + q;
      auto r = ar_.add(key[f], key[t], st);
      if (!r) return;
      key[t] = *r;
      key[f] = Arith::zero();
    }
    out.emit(key, Arith::zero(), {e, -1, 0});
  }

  void unite(const CwAt& at, const DpTable& a, int ea, const DpTable& b, int eb,
             TableBuilder& out) const override {
    std::vector<Scalar> key = key_of(a, ea);
    RandomStream st = stream_for(ar_, at.node, ea, eb, 0);
    if (!add_keys(ar_, key, key_of(b, eb), st)) return;
    out.emit(key, Arith::zero(), {ea, eb, 0});
  }

  void join(const CwAt& at, const DpTable& c, int e, TableBuilder& out) const override {
    for (int q = 0; q < k_; ++q) {
      if (c.code(e, at.op.label1 * k_ + q) != 0 && c.code(e, at.op.label2 * k_ + q) != 0) return;
    }
    out.emit(key_of(c, e), Arith::zero(), {e, -1, 0});
  }

 private:
  int w_;
  int k_;
  const Arith& ar_;
};

// ------------------------------------------------ capacitated dominating set
// key: a[w] available capacity, u[w] used capacity, d[w] dominated count,
// q[w] unselected count (all rounded); objective: exact number selected.
class CdsCw final : public CwProblem {
 public:
  CdsCw(int w, const Graph& g, const Arith& ar) : w_(w), g_(g), ar_(ar) {}
  TableLayout layout() const override { return all_rounded(4 * w_, Sense::kMin, false); }

  void introduce(const CwAt& at, TableBuilder& out) const override {
    std::vector<Scalar> key(4 * w_);
    const int l = at.op.label;
    key[3 * w_ + l] = ar_.one();
    out.emit(key, Arith::count(0), {-1, -1, 0});
    key[3 * w_ + l] = Arith::zero();
    RandomStream st = stream_for(ar_, at.node, -1, -1, 1);
    auto cap = ar_.enter(detail::clamped_capacity(g_, at.op.vertex), st);
    if (!cap) return;
    key[l] = *cap;
    out.emit(key, Arith::count(1), {-1, -1, 1});
  }

  void rename(const CwAt& at, const DpTable& c, int e, TableBuilder& out) const override {
    std::vector<Scalar> key = key_of(c, e);
    RandomStream st = stream_for(ar_, at.node, e, -1, 0);
    if (!rename_blocks(ar_, key, w_, 4, at.op.label1, at.op.label2, st)) return;
    out.emit(key, c.objective(e), {e, -1, 0});
  }

  void unite(const CwAt& at, const DpTable& a, int ea, const DpTable& b, int eb,
             TableBuilder& out) const override {
    std::vector<Scalar> key = key_of(a, ea);
    RandomStream st = stream_for(ar_, at.node, ea, eb, 0);
    if (!add_keys(ar_, key, key_of(b, eb), st)) return;
    out.emit(key, exact_sum(a.objective(ea), b.objective(eb)), {ea, eb, 0});
  }

  // Largest m worth trying against a budget coordinate: beyond it the
  // rounded sum exceeds slack·budget whatever the random draws are.
  int reach(const Scalar& budget, const Scalar& spent, int size) const {
    if (ar_.exact()) {
      if (budget.code < spent.code) return -1;
      return static_cast<int>(std::min<std::uint64_t>(size, budget.code - spent.code));
    }
    const double limit = (1.0 + ar_.ctx().delta()) * ar_.ctx().slack_factor() * ar_.value(budget);
    return static_cast<int>(std::min<double>(size, std::floor(limit) + 1));
  }

  void join(const CwAt& at, const DpTable& c, int e, TableBuilder& out) const override {
    const std::vector<Scalar> key = key_of(c, e);
    const int l1 = at.op.label1;
    const int l2 = at.op.label2;
    const int n1 = at.sizes[l1];
    const int n2 = at.sizes[l2];
    auto A = [&](int l) { return l; };
    auto U = [&](int l) { return w_ + l; };
    auto D = [&](int l) { return 2 * w_ + l; };
    auto Q = [&](int l) { return 3 * w_ + l; };
    // m12: unselected l2 vertices newly dominated by selected l1 vertices.
    const int top12 = std::min(reach(key[A(l1)], key[U(l1)], n2), reach(key[Q(l2)], key[D(l2)], n2));
    const int top21 = std::min(reach(key[A(l2)], key[U(l2)], n1), reach(key[Q(l1)], key[D(l1)], n1));
    std::vector<Scalar> next = key;
    for (int m12 = 0; m12 <= top12; ++m12) {
      RandomStream s1 = stream_for(ar_, at.node, e, -1, m12);
      auto u1 = ar_.add_int(key[U(l1)], static_cast<std::uint64_t>(m12), s1);
      auto d2 = ar_.add_int(key[D(l2)], static_cast<std::uint64_t>(m12), s1);
      if (!u1 || !d2) continue;
      if (!ar_.le_slack(*u1, key[A(l1)]) || !ar_.le_slack(*d2, key[Q(l2)])) continue;
      next[U(l1)] = *u1;
      next[D(l2)] = *d2;
      for (int m21 = 0; m21 <= top21; ++m21) {
        RandomStream s2 = stream_for(ar_, at.node, e, m12, (std::int64_t{1} << 32) + m21);
        auto u2 = ar_.add_int(key[U(l2)], static_cast<std::uint64_t>(m21), s2);
        auto d1 = ar_.add_int(key[D(l1)], static_cast<std::uint64_t>(m21), s2);
        if (!u2 || !d1) continue;
        if (!ar_.le_slack(*u2, key[A(l2)]) || !ar_.le_slack(*d1, key[Q(l1)])) continue;
        next[U(l2)] = *u2;
        next[D(l1)] = *d1;
        out.emit(next, c.objective(e), {e, -1, m12 * (n1 + 1) + m21});
      }
    }
  }

 private:
  int w_;
  const Graph& g_;
  const Arith& ar_;
};

// --------------------------------------------------- bounded degree deletion
// key: active[w], maxdeg[w] (rounded); objective: exact number deleted.
class BddCw final : public CwProblem {
 public:
  BddCw(int w, int delta, const Arith& ar) : w_(w), max_degree_(delta), ar_(ar) {}
  TableLayout layout() const override { return all_rounded(2 * w_, Sense::kMin, false); }

  void introduce(const CwAt& at, TableBuilder& out) const override {
    std::vector<Scalar> key(2 * w_);
    out.emit(key, Arith::count(1), {-1, -1, 1});
    key[at.op.label] = ar_.one();
    out.emit(key, Arith::count(0), {-1, -1, 0});
  }

  void rename(const CwAt& at, const DpTable& c, int e, TableBuilder& out) const override {
    std::vector<Scalar> key = key_of(c, e);
    const int f = at.op.label1;
    const int t = at.op.label2;
    RandomStream st = stream_for(ar_, at.node, e, -1, 0);
    auto act = ar_.add(key[f], key[t], st);
    if (!act) return;
    key[t] = *act;
    key[f] = Arith::zero();
    if (key[w_ + f].code > key[w_ + t].code) key[w_ + t] = key[w_ + f];
    key[w_ + f] = Arith::zero();
    out.emit(key, c.objective(e), {e, -1, 0});
  }

  void unite(const CwAt& at, const DpTable& a, int ea, const DpTable& b, int eb,
             TableBuilder& out) const override {
    std::vector<Scalar> key = key_of(a, ea);
    const std::vector<Scalar> kb = key_of(b, eb);
    RandomStream st = stream_for(ar_, at.node, ea, eb, 0);
    for (int l = 0; l < w_; ++l) {
      auto act = ar_.add(key[l], kb[l], st);
      if (!act) return;
      key[l] = *act;
      if (kb[w_ + l].code > key[w_ + l].code) key[w_ + l] = kb[w_ + l];
    }
    out.emit(key, exact_sum(a.objective(ea), b.objective(eb)), {ea, eb, 0});
  }

  void join(const CwAt& at, const DpTable& c, int e, TableBuilder& out) const override {
    std::vector<Scalar> key = key_of(c, e);
    const int l1 = at.op.label1;
    const int l2 = at.op.label2;
    RandomStream st = stream_for(ar_, at.node, e, -1, 0);
    const Scalar act1 = key[l1];
    const Scalar act2 = key[l2];
    if (act1.code != 0) {
      auto md = ar_.add(key[w_ + l1], act2, st);
      if (!md || !ar_.le_slack_int(*md, max_degree_)) return;
      key[w_ + l1] = *md;
    }
    if (act2.code != 0) {
      auto md = ar_.add(key[w_ + l2], act1, st);
      if (!md || !ar_.le_slack_int(*md, max_degree_)) return;
      key[w_ + l2] = *md;
    }
    out.emit(key, c.objective(e), {e, -1, 0});
  }

 private:
  int w_;
  int max_degree_;
  const Arith& ar_;
};

int root_best(const DpTable& t, Sense sense) {
  int best = -1;
  for (int e = 0; e < t.size(); ++e) {
    if (best < 0) {
      best = e;
      continue;
    }
    const std::uint64_t a = t.objective(e).code;
    const std::uint64_t b = t.objective(best).code;
    if ((sense == Sense::kMax && a > b) || (sense == Sense::kMin && a < b)) best = e;
  }
  return best;
}

}  // namespace

Solution maxcut_cw(const CwExpression& expr, const Graph& g, const RoundingContext& ctx,
                   const SolveOptions& options) {
  require_matching(expr, g);
  const Arith ar = detail::solver_arith(ctx);
  const MaxCutCw problem(expr.width(), ar);
  DpRun run = detail::run_cw(expr, problem, ar, detail::engine_options(options));
  const DpTable& root = run.tables[expr.root()];
  const int best = root_best(root, Sense::kMax);
  if (best < 0) throw InternalError("max cut root table is empty");
  const std::vector<int> chosen =
      detail::trace(run.tables, detail::cw_children(expr), expr.root(), best);
  Solution s;
  s.problem = Problem::kMaxCut;
  s.side = vertex_choices(expr, run, chosen, g.n());
  s.claimed = ar.value(root.objective(best));
  s.objective = cut_value(g, s.side);
  s.stats = run.stats;
  return s;
}

Solution eds_cw(const CwExpression& expr, const Graph& g, const RoundingContext& ctx,
                const SolveOptions& options) {
  require_matching(expr, g);
  const Arith ar = detail::solver_arith(ctx);
  const int w = expr.width();
  const EdsCw problem(w, ar);
  DpRun run = detail::run_cw(expr, problem, ar, detail::engine_options(options));
  const DpTable& root = run.tables[expr.root()];
  const std::vector<int> sizes = expr.label_sizes()[expr.root()];
  int best = -1;
  double best_sum = 0;
  for (int e = 0; e < root.size(); ++e) {
    double sum = 0;
    bool ok = true;
    for (int l = 0; l < w && ok; ++l) {
      if (sizes[l] == 0) continue;
      const Scalar c = root.key(e, 2 * w + l);
      if (root.code(e, w + l) != 0) {
        ok = ar.int_le_slack(sizes[l], c);
        sum += sizes[l];
      } else {
        ok = ar.le_slack(root.key(e, l), c);
        sum += ar.value(root.key(e, l));
      }
    }
    if (ok && (best < 0 || sum < best_sum)) {
      best = e;
      best_sum = sum;
    }
  }
  if (best < 0) throw InternalError("edge dominating set root table has no feasible entry");
  const std::vector<int> chosen =
      detail::trace(run.tables, detail::cw_children(expr), expr.root(), best);
  const std::vector<int> pick = vertex_choices(expr, run, chosen, g.n());

  // Maximum matching inside S, then one extra edge per unmatched vertex.
  std::vector<int> in_s;
  std::vector<int> local(g.n(), -1);
  for (int v = 0; v < g.n(); ++v) {
    if (pick[v] == 1) {
      local[v] = static_cast<int>(in_s.size());
      in_s.push_back(v);
    }
  }
  using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BGraph bg(in_s.size());
  for (const Edge& e : g.edges()) {
    if (local[e.u] >= 0 && local[e.v] >= 0) boost::add_edge(local[e.u], local[e.v], bg);
  }
  using Vertex = boost::graph_traits<BGraph>::vertex_descriptor;
  std::vector<Vertex> mate(in_s.size());
  if (!in_s.empty()) boost::edmonds_maximum_cardinality_matching(bg, &mate[0]);
  const Vertex none = boost::graph_traits<BGraph>::null_vertex();
  std::set<int> chosen_edges;
  for (std::size_t i = 0; i < in_s.size(); ++i) {
    if (mate[i] != none && i < mate[i]) {
      chosen_edges.insert(g.edge_index(in_s[i], in_s[mate[i]]));
    }
  }
  for (std::size_t i = 0; i < in_s.size(); ++i) {
    if (mate[i] != none) continue;
    const int v = in_s[i];
    int pickd = -1;
    for (int u : g.neighbors(v)) {
      if (local[u] < 0) {
        pickd = g.edge_index(v, u);
        break;
      }
    }
    if (pickd < 0 && !g.neighbors(v).empty()) pickd = g.edge_index(v, g.neighbors(v).front());
    if (pickd >= 0) chosen_edges.insert(pickd);
  }
  Solution s;
  s.problem = Problem::kEds;
  s.edges.assign(chosen_edges.begin(), chosen_edges.end());
  s.selected = in_s;
  s.claimed = best_sum / 2.0;
  s.objective = static_cast<std::int64_t>(s.edges.size());
  s.join_choices = join_choices(expr, run, chosen);
  s.stats = run.stats;
  if (!is_edge_dominating(g, s.edges)) throw InternalError("edge dominating set check failed");
  return s;
}

Solution eqcolor_cw(const CwExpression& expr, const Graph& g, int k, const RoundingContext& ctx,
                    const SolveOptions& options) {
  if (k < 1) throw DomainError("number of colors must be at least 1");
  require_matching(expr, g);
  const Arith ar = detail::solver_arith(ctx);
  const int w = expr.width();
  const EqcolorCw problem(w, k, ar);
  DpRun run = detail::run_cw(expr, problem, ar, detail::engine_options(options));
  const DpTable& root = run.tables[expr.root()];
  Solution s;
  s.problem = Problem::kEqcolor;
  s.stats = run.stats;
  if (root.size() == 0) {
    s.feasible = false;
    s.ratio = std::numeric_limits<double>::infinity();
    return s;
  }
  auto ratio_of = [&](int e) {
    double hi = 0;
    double lo = std::numeric_limits<double>::infinity();
    for (int q = 0; q < k; ++q) {
      double total = 0;
      for (int l = 0; l < w; ++l) total += ar.value(root.key(e, l * k + q));
      hi = std::max(hi, total);
      lo = std::min(lo, total);
    }
    return lo <= 0 ? std::numeric_limits<double>::infinity() : hi / lo;
  };
  auto lex_less = [&](int a, int b) {
    for (int d = 0; d < root.key_dim(); ++d) {
      if (root.code(a, d) != root.code(b, d)) return root.code(a, d) < root.code(b, d);
    }
    return false;
  };
  // Most equitable looking entry; ties go to the smallest key.
  int best = -1;
  double best_ratio = 0;
  for (int e = 0; e < root.size(); ++e) {
    const double r = ratio_of(e);
    if (best < 0 || r < best_ratio || (r == best_ratio && lex_less(e, best))) {
      best = e;
      best_ratio = r;
    }
  }
  const std::vector<int> chosen =
      detail::trace(run.tables, detail::cw_children(expr), expr.root(), best);
  s.color = vertex_choices(expr, run, chosen, g.n());
  if (!is_proper_coloring(g, s.color, k)) throw InternalError("traced coloring is not proper");
  s.class_sizes = color_class_sizes(s.color, k);
  s.ratio = class_ratio(s.class_sizes);
  s.claimed = best_ratio;
  s.objective = *std::max_element(s.class_sizes.begin(), s.class_sizes.end());
  return s;
}

Solution cds_cw(const CwExpression& expr, const Graph& g, const RoundingContext& ctx,
                const SolveOptions& options) {
  require_matching(expr, g);
  // The root test and the capacity test each lose up to ε'n vertices, so the
  // table runs at ε/3 to keep the total under εn.
  RoundingContext inner = ctx;
  if (!ctx.exact()) {
    inner = RoundingContext(ctx.mode(), ctx.delta(), ctx.epsilon() / 3, ctx.n(), ctx.seed());
    inner.set_cap_value(ctx.cap_value()).set_snap_tolerance(ctx.snap_tolerance());
  }
  const Arith ar = detail::solver_arith(inner);
  const int w = expr.width();
  const CdsCw problem(w, g, ar);
  DpRun run = detail::run_cw(expr, problem, ar, detail::engine_options(options));
  const DpTable& root = run.tables[expr.root()];
  const double n = g.n();
  int best = -1;
  for (int e = 0; e < root.size(); ++e) {
    const double c = static_cast<double>(root.objective(e).code);
    bool ok;
    if (ar.exact()) {
      std::uint64_t dom = 0;
      for (int l = 0; l < w; ++l) dom += root.code(e, 2 * w + l);
      ok = n - c <= static_cast<double>(dom);
    } else {
      double dom = 0;
      for (int l = 0; l < w; ++l) dom += ar.value(root.key(e, 2 * w + l));
      ok = n - c <= ar.ctx().slack_factor() * dom * (1 + 1e-12);
    }
    if (ok && (best < 0 || root.objective(e).code < root.objective(best).code)) best = e;
  }
  if (best < 0) throw InternalError("capacitated dominating set root table has no feasible entry");
  const std::vector<int> chosen =
      detail::trace(run.tables, detail::cw_children(expr), expr.root(), best);
  const std::vector<int> pick = vertex_choices(expr, run, chosen, g.n());
  std::vector<char> sel(g.n(), 0);
  std::vector<std::uint64_t> limit(g.n(), 0);
  for (int v = 0; v < g.n(); ++v) {
    sel[v] = pick[v] == 1;
    limit[v] = g.capacity(v);
  }
  const Assignment asg = capacitated_assignment(g, sel, limit);
  Solution s;
  s.problem = Problem::kCds;
  s.selected = detail::mask_to_list(sel);
  s.dominator = asg.dominator;
  s.undominated = asg.undominated;
  s.claimed = static_cast<double>(root.objective(best).code);
  s.objective = static_cast<std::int64_t>(s.selected.size());
  const DominationCheck check = check_domination(g, s.selected, s.dominator);
  if (!check.valid) throw InternalError("capacitated assignment check failed");
  s.capacity_ratio = check.capacity_ratio;
  s.join_choices = join_choices(expr, run, chosen);
  s.stats = run.stats;
  return s;
}

Solution bdd_cw(const CwExpression& expr, const Graph& g, int max_degree,
                const RoundingContext& ctx, const SolveOptions& options) {
  if (max_degree < 0) throw DomainError("degree bound must be nonnegative");
  require_matching(expr, g);
  const Arith ar = detail::solver_arith(ctx);
  const BddCw problem(expr.width(), max_degree, ar);
  DpRun run = detail::run_cw(expr, problem, ar, detail::engine_options(options));
  const DpTable& root = run.tables[expr.root()];
  const int best = root_best(root, Sense::kMin);
  if (best < 0) throw InternalError("bounded degree deletion root table is empty");
  const std::vector<int> chosen =
      detail::trace(run.tables, detail::cw_children(expr), expr.root(), best);
  const std::vector<int> pick = vertex_choices(expr, run, chosen, g.n());
  Solution s;
  s.problem = Problem::kBdd;
  for (int v = 0; v < g.n(); ++v) {
    if (pick[v] == 1) s.deleted.push_back(v);
  }
  s.claimed = static_cast<double>(root.objective(best).code);
  s.objective = static_cast<std::int64_t>(s.deleted.size());
  s.achieved_degree = residual_max_degree(g, s.deleted);
  s.guarantee_met = s.achieved_degree <= ar.ctx().slack_factor() * max_degree + 1e-9;
  s.stats = run.stats;
  return s;
}

}  // namespace widthapx
