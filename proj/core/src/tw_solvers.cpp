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

#include <cmath>
#include <limits>

#include "solver_common.hpp"
#include "widthapx/flow.hpp"
#include "widthapx/verify.hpp"

namespace widthapx {

namespace {

using detail::DpRun;
using detail::stream_for;
using detail::TwAt;
using detail::TwProblem;

// Bag tables store `per` coordinates for each bag vertex (in bag order),
// followed by `globals` coordinates.
struct BagShape {
  int per;
  int globals;
  std::vector<char> per_rounded;
  std::vector<char> global_rounded;

  TableLayout layout(int bag_size, Sense sense, bool rounded_objective) const {
    TableLayout l;
    l.key_dim = bag_size * per + globals;
    for (int j = 0; j < bag_size; ++j) {
      l.rounded.insert(l.rounded.end(), per_rounded.begin(), per_rounded.end());
    }
    l.rounded.insert(l.rounded.end(), global_rounded.begin(), global_rounded.end());
    l.sense = sense;
    l.rounded_objective = rounded_objective;
    return l;
  }
};

std::vector<Scalar> key_of(const DpTable& t, int e) {
  std::vector<Scalar> k;
  t.key(e, k);
  return k;
}

void insert_slot(std::vector<Scalar>& key, int per, int pos, const std::vector<Scalar>& slot) {
  key.insert(key.begin() + static_cast<std::ptrdiff_t>(pos) * per, slot.begin(), slot.end());
}

void erase_slot(std::vector<Scalar>& key, int per, int pos) {
  auto first = key.begin() + static_cast<std::ptrdiff_t>(pos) * per;
  key.erase(first, first + per);
}

void require_nice(const NiceDecomposition& ntd, const Graph& g) {
  if (ntd.vertex_count() != g.n()) throw ValidationError("decomposition and graph disagree on n");
  ntd.validate(&g);
}

Scalar exact_sum(Scalar a, Scalar b) { return Arith::count(a.code + b.code); }

// Visits (vertex, child entry, forget provenance) for every forget node on the trace.
template <typename Fn>
void each_forget(const NiceDecomposition& ntd, const DpRun& run, const std::vector<int>& chosen,
                 Fn fn) {
  for (int id = 0; id < ntd.size(); ++id) {
    const NiceNode& n = ntd.node(id);
    if (n.kind != NiceKind::kForget || chosen[id] < 0) continue;
    const NiceNode& child = ntd.node(n.child1);
    const int pos = static_cast<int>(std::lower_bound(child.bag.begin(), child.bag.end(), n.vertex) -
                                     child.bag.begin());
    fn(n.vertex, child.bag, pos, run.tables[n.child1], chosen[n.child1],
       run.tables[id].provenance(chosen[id]).choice);
  }
}

// ------------------------------------------------------- equitable coloring
// per bag vertex: its color (exact). globals: class sizes over forgotten
// vertices only, so joins add disjoint sets.
class EqcolorTw final : public TwProblem {
 public:
  EqcolorTw(const Graph& g, int k, const Arith& ar)
      : g_(g), k_(k), ar_(ar), shape_{1, k, {0}, std::vector<char>(k, 1)} {}

  TableLayout layout(const NiceNode& node) const override {
    return shape_.layout(static_cast<int>(node.bag.size()), Sense::kNone, false);
  }

  void leaf(const TwAt&, TableBuilder& out) const override {
    out.emit(std::vector<Scalar>(k_), Arith::zero(), {-1, -1, 0});
  }

  void introduce(const TwAt& at, const DpTable& c, int e, TableBuilder& out) const override {
    const int v = at.nn.vertex;
    for (int q = 0; q < k_; ++q) {
      bool clash = false;
      for (std::size_t j = 0; j < at.child_bag.size() && !clash; ++j) {
        clash = c.code(e, static_cast<int>(j)) == static_cast<std::uint64_t>(q) &&
                g_.has_edge(v, at.child_bag[j]);
      }
      if (clash) continue;
      std::vector<Scalar> key = key_of(c, e);
      insert_slot(key, 1, at.pos, {Arith::count(q)});
      out.emit(key, Arith::zero(), {e, -1, q});
    }
  }

  void forget(const TwAt& at, const DpTable& c, int e, TableBuilder& out) const override {
    std::vector<Scalar> key = key_of(c, e);
    const int q = static_cast<int>(key[at.pos].code);
    erase_slot(key, 1, at.pos);
    const int slot = static_cast<int>(at.nn.bag.size()) + q;
    RandomStream st = stream_for(ar_, at.node, e, -1, 0);
    auto r = ar_.add_int(key[slot], 1, st);
    if (!r) return;
    key[slot] = *r;
    out.emit(key, Arith::zero(), {e, -1, 0});
  }

  void join_key(const DpTable& t, int e, std::vector<std::uint64_t>& out) const override {
    const int b = t.key_dim() - k_;
    out.assign(t.codes(e), t.codes(e) + b);
  }

  void join(const TwAt& at, const DpTable& a, int ea, const DpTable& b, int eb,
            TableBuilder& out) const override {
    std::vector<Scalar> key = key_of(a, ea);
    const int base = static_cast<int>(at.nn.bag.size());
    RandomStream st = stream_for(ar_, at.node, ea, eb, 0);
    for (int q = 0; q < k_; ++q) {
      auto r = ar_.add(key[base + q], b.key(eb, base + q), st);
      if (!r) return;
      key[base + q] = *r;
    }
    out.emit(key, Arith::zero(), {ea, eb, 0});
  }

 private:
  const Graph& g_;
  int k_;
  const Arith& ar_;
  BagShape shape_;
};

// ------------------------------------------------ capacitated dominating set
// per bag vertex: state (exact; 0 waiting, 1 dominated, 2 selected) and used
// capacity (rounded, selected vertices only). Objective: exact cost of the
// forgotten selected vertices.
constexpr std::uint64_t kWaiting = 0;
constexpr std::uint64_t kDominated = 1;
constexpr std::uint64_t kSelected = 2;

class CdsTw final : public TwProblem {
 public:
  CdsTw(const Graph& g, const Arith& ar) : g_(g), ar_(ar), shape_{2, 0, {0, 1}, {}} {}

  TableLayout layout(const NiceNode& node) const override {
    return shape_.layout(static_cast<int>(node.bag.size()), Sense::kMin, false);
  }

  void leaf(const TwAt&, TableBuilder& out) const override {
    out.emit(std::vector<Scalar>(), Arith::count(0), {-1, -1, 0});
  }

  void introduce(const TwAt& at, const DpTable& c, int e, TableBuilder& out) const override {
    std::vector<Scalar> key = key_of(c, e);
    insert_slot(key, 2, at.pos, {Arith::count(kWaiting), Arith::zero()});
    out.emit(key, c.objective(e), {e, -1, 0});
    key[2 * at.pos] = Arith::count(kSelected);
    out.emit(key, c.objective(e), {e, -1, 1});
  }

  bool fits(const Scalar& used, int v) const {
    return ar_.le_slack_int(used, static_cast<double>(g_.capacity(v)));
  }

  void forget(const TwAt& at, const DpTable& c, int e, TableBuilder& out) const override {
    const std::vector<Scalar> key = key_of(c, e);
    const int v = at.nn.vertex;
    const int p = at.pos;
    const std::uint64_t state = key[2 * p].code;
    const int bs = static_cast<int>(at.child_bag.size());
    if (state == kDominated) {
      std::vector<Scalar> next = key;
      erase_slot(next, 2, p);
      out.emit(next, c.objective(e), {e, -1, 0});
      return;
    }
    if (state == kWaiting) {
      for (int j = 0; j < bs; ++j) {
        const int u = at.child_bag[j];
        if (j == p || key[2 * j].code != kSelected || !g_.has_edge(v, u)) continue;
        RandomStream st = stream_for(ar_, at.node, e, -1, j);
        auto used = ar_.add_int(key[2 * j + 1], 1, st);
        if (!used || !fits(*used, u)) continue;
        std::vector<Scalar> next = key;
        next[2 * j + 1] = *used;
        erase_slot(next, 2, p);
        out.emit(next, c.objective(e), {e, -1, j});
      }
      return;
    }
    // Selected: pick which waiting neighbours in the bag it takes on.
    std::vector<int> waiting;
    for (int j = 0; j < bs; ++j) {
      if (j != p && key[2 * j].code == kWaiting && g_.has_edge(v, at.child_bag[j])) {
        waiting.push_back(j);
      }
    }
    const Scalar cost = exact_sum(c.objective(e), Arith::count(g_.cost(v)));
    const std::uint32_t subsets = 1u << waiting.size();
    for (std::uint32_t s = 0; s < subsets; ++s) {
      std::int32_t mask = 0;
      int taken = 0;
      std::vector<Scalar> next = key;
      for (std::size_t i = 0; i < waiting.size(); ++i) {
        if (!(s >> i & 1u)) continue;
        next[2 * waiting[i]] = Arith::count(kDominated);
        mask |= std::int32_t{1} << waiting[i];
        ++taken;
      }
      RandomStream st = stream_for(ar_, at.node, e, -1, mask);
      auto used = ar_.add_int(key[2 * p + 1], static_cast<std::uint64_t>(taken), st);
      if (!used || !fits(*used, v)) continue;
      erase_slot(next, 2, p);
      out.emit(next, cost, {e, -1, mask});
    }
  }

  void join_key(const DpTable& t, int e, std::vector<std::uint64_t>& out) const override {
    const int bs = t.key_dim() / 2;
    out.resize(bs);
    for (int j = 0; j < bs; ++j) out[j] = t.code(e, 2 * j) == kSelected ? 1 : 0;
  }

  void join(const TwAt& at, const DpTable& a, int ea, const DpTable& b, int eb,
            TableBuilder& out) const override {
    std::vector<Scalar> key = key_of(a, ea);
    const int bs = static_cast<int>(at.nn.bag.size());
    RandomStream st = stream_for(ar_, at.node, ea, eb, 0);
    for (int j = 0; j < bs; ++j) {
      const std::uint64_t sa = key[2 * j].code;
      const std::uint64_t sb = b.code(eb, 2 * j);
      if (sa == kSelected) {
        auto used = ar_.add(key[2 * j + 1], b.key(eb, 2 * j + 1), st);
        if (!used || !fits(*used, at.nn.bag[j])) return;
        key[2 * j + 1] = *used;
      } else if (sa == kDominated && sb == kDominated) {
        return;  // one dominator per vertex
      } else if (sb == kDominated) {
        key[2 * j] = Arith::count(kDominated);
      }
    }
    out.emit(key, exact_sum(a.objective(ea), b.objective(eb)), {ea, eb, 0});
  }

 private:
  const Graph& g_;
  const Arith& ar_;
  BagShape shape_;
};

// --------------------------------------------------- bounded degree deletion
// per bag vertex: active flag (exact) and the number of active neighbours
// already forgotten (rounded). Objective: exact number deleted so far.
class BddTw final : public TwProblem {
 public:
  BddTw(const Graph& g, int delta, const Arith& ar)
      : g_(g), max_degree_(delta), ar_(ar), shape_{2, 0, {0, 1}, {}} {}

  TableLayout layout(const NiceNode& node) const override {
    return shape_.layout(static_cast<int>(node.bag.size()), Sense::kMin, false);
  }

  void leaf(const TwAt&, TableBuilder& out) const override {
    out.emit(std::vector<Scalar>(), Arith::count(0), {-1, -1, 0});
  }

  void introduce(const TwAt& at, const DpTable& c, int e, TableBuilder& out) const override {
    std::vector<Scalar> key = key_of(c, e);
    insert_slot(key, 2, at.pos, {Arith::count(1), Arith::zero()});
    out.emit(key, c.objective(e), {e, -1, 0});
    key[2 * at.pos] = Arith::count(0);
    out.emit(key, c.objective(e), {e, -1, 1});
  }

  void forget(const TwAt& at, const DpTable& c, int e, TableBuilder& out) const override {
    std::vector<Scalar> key = key_of(c, e);
    const int p = at.pos;
    if (key[2 * p].code == 0) {
      erase_slot(key, 2, p);
      out.emit(key, exact_sum(c.objective(e), Arith::count(1)), {e, -1, 0});
      return;
    }
    const int v = at.nn.vertex;
    RandomStream st = stream_for(ar_, at.node, e, -1, 0);
    std::uint64_t in_bag = 0;
    for (std::size_t j = 0; j < at.child_bag.size(); ++j) {
      const int u = at.child_bag[j];
      if (static_cast<int>(j) == p || key[2 * j].code == 0 || !g_.has_edge(v, u)) continue;
      ++in_bag;
      auto cnt = ar_.add_int(key[2 * j + 1], 1, st);
      if (!cnt || !ar_.le_slack_int(*cnt, max_degree_)) return;
      key[2 * j + 1] = *cnt;
    }
    auto final_degree = ar_.add_int(key[2 * p + 1], in_bag, st);
    if (!final_degree || !ar_.le_slack_int(*final_degree, max_degree_)) return;
    erase_slot(key, 2, p);
    out.emit(key, c.objective(e), {e, -1, 0});
  }

  void join_key(const DpTable& t, int e, std::vector<std::uint64_t>& out) const override {
    const int bs = t.key_dim() / 2;
    out.resize(bs);
    for (int j = 0; j < bs; ++j) out[j] = t.code(e, 2 * j);
  }

  void join(const TwAt& at, const DpTable& a, int ea, const DpTable& b, int eb,
            TableBuilder& out) const override {
    std::vector<Scalar> key = key_of(a, ea);
    const int bs = static_cast<int>(at.nn.bag.size());
    RandomStream st = stream_for(ar_, at.node, ea, eb, 0);
    for (int j = 0; j < bs; ++j) {
      if (key[2 * j].code == 0) continue;
      auto cnt = ar_.add(key[2 * j + 1], b.key(eb, 2 * j + 1), st);
      if (!cnt || !ar_.le_slack_int(*cnt, max_degree_)) return;
      key[2 * j + 1] = *cnt;
    }
    out.emit(key, exact_sum(a.objective(ea), b.objective(eb)), {ea, eb, 0});
  }

 private:
  const Graph& g_;
  int max_degree_;
  const Arith& ar_;
  BagShape shape_;
};

// ---------------------------------------------------- min max orientation
// per bag vertex: weighted out-degree accumulated towards forgotten vertices
// (rounded). Objective: largest finished out-degree so far (rounded).
class MmoTw final : public TwProblem {
 public:
  MmoTw(const Graph& g, const Arith& ar) : g_(g), ar_(ar), shape_{1, 0, {1}, {}} {}

  TableLayout layout(const NiceNode& node) const override {
    return shape_.layout(static_cast<int>(node.bag.size()), Sense::kMin, true);
  }

  void leaf(const TwAt&, TableBuilder& out) const override {
    out.emit(std::vector<Scalar>(), Arith::zero(), {-1, -1, 0});
  }

  void introduce(const TwAt& at, const DpTable& c, int e, TableBuilder& out) const override {
    std::vector<Scalar> key = key_of(c, e);
    insert_slot(key, 1, at.pos, {Arith::zero()});
    out.emit(key, c.objective(e), {e, -1, 0});
  }

  void forget(const TwAt& at, const DpTable& c, int e, TableBuilder& out) const override {
    const std::vector<Scalar> key = key_of(c, e);
    const int v = at.nn.vertex;
    const int p = at.pos;
    std::vector<int> nbr;
    std::vector<std::uint64_t> weight;
    for (std::size_t j = 0; j < at.child_bag.size(); ++j) {
      if (static_cast<int>(j) == p) continue;
      const int id = g_.edge_index(v, at.child_bag[j]);
      if (id < 0) continue;
      nbr.push_back(static_cast<int>(j));
      weight.push_back(g_.edges()[id].weight);
    }
    const std::uint32_t options = 1u << nbr.size();
    for (std::uint32_t s = 0; s < options; ++s) {
      std::int32_t mask = 0;
      std::uint64_t out_weight = 0;
      for (std::size_t i = 0; i < nbr.size(); ++i) {
        if (s >> i & 1u) {
          mask |= std::int32_t{1} << nbr[i];
          out_weight += weight[i];
        }
      }
      RandomStream st = stream_for(ar_, at.node, e, -1, mask);
      std::vector<Scalar> next = key;
      bool ok = true;
      for (std::size_t i = 0; i < nbr.size() && ok; ++i) {
        if (s >> i & 1u) continue;
        auto acc = ar_.add_int(next[nbr[i]], weight[i], st);
        ok = acc.has_value();
        if (ok) next[nbr[i]] = *acc;
      }
      if (!ok) continue;
      auto finished = ar_.add_int(key[p], out_weight, st);
      if (!finished) continue;
      Scalar obj = c.objective(e);
      if (finished->code > obj.code) obj = *finished;
      erase_slot(next, 1, p);
      out.emit(next, obj, {e, -1, mask});
    }
  }

  void join_key(const DpTable&, int, std::vector<std::uint64_t>& out) const override {
    out.clear();
  }

  void join(const TwAt& at, const DpTable& a, int ea, const DpTable& b, int eb,
            TableBuilder& out) const override {
    std::vector<Scalar> key = key_of(a, ea);
    RandomStream st = stream_for(ar_, at.node, ea, eb, 0);
    for (std::size_t j = 0; j < at.nn.bag.size(); ++j) {
      auto acc = ar_.add(key[j], b.key(eb, static_cast<int>(j)), st);
      if (!acc) return;
      key[j] = *acc;
    }
    Scalar obj = a.objective(ea);
    if (b.objective(eb).code > obj.code) obj = b.objective(eb);
    out.emit(key, obj, {ea, eb, 0});
  }

 private:
  const Graph& g_;
  const Arith& ar_;
  BagShape shape_;
};

int single_root_entry(const DpTable& root, Sense sense) {
  int best = -1;
  for (int e = 0; e < root.size(); ++e) {
    if (best < 0) {
      best = e;
    } else if (sense == Sense::kMin && root.objective(e).code < root.objective(best).code) {
      best = e;
    }
  }
  return best;
}

}  // namespace

Solution eqcolor_tw(const NiceDecomposition& ntd, const Graph& g, int k,
                    const RoundingContext& ctx, const SolveOptions& options) {
  if (k < 1) throw DomainError("number of colors must be at least 1");
  require_nice(ntd, g);
  const Arith ar = detail::solver_arith(ctx);
  const EqcolorTw problem(g, k, ar);
  DpRun run = detail::run_tw(ntd, problem, ar, detail::engine_options(options));
  const DpTable& root = run.tables[ntd.root()];
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
      const double total = ar.value(root.key(e, q));
      hi = std::max(hi, total);
      lo = std::min(lo, total);
    }
    return lo <= 0 ? std::numeric_limits<double>::infinity() : hi / lo;
  };
  auto lex_less = [&](int a, int b) {
    for (int d = 0; d < k; ++d) {
      if (root.code(a, d) != root.code(b, d)) return root.code(a, d) < root.code(b, d);
    }
    return false;
  };
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
      detail::trace(run.tables, detail::tw_children(ntd), ntd.root(), best);
  s.color.assign(g.n(), -1);
  each_forget(ntd, run, chosen,
              [&](int v, const std::vector<int>&, int pos, const DpTable& t, int e, int) {
                s.color[v] = static_cast<int>(t.code(e, pos));
              });
  if (!is_proper_coloring(g, s.color, k)) throw InternalError("traced coloring is not proper");
  s.class_sizes = color_class_sizes(s.color, k);
  s.ratio = class_ratio(s.class_sizes);
  s.claimed = best_ratio;
  s.objective = *std::max_element(s.class_sizes.begin(), s.class_sizes.end());
  return s;
}

Solution cds_tw(const NiceDecomposition& ntd, const Graph& g, const RoundingContext& ctx,
                const SolveOptions& options) {
  require_nice(ntd, g);
  const Arith ar = detail::solver_arith(ctx);
  const CdsTw problem(g, ar);
  DpRun run = detail::run_tw(ntd, problem, ar, detail::engine_options(options));
  const DpTable& root = run.tables[ntd.root()];
  Solution s;
  s.problem = Problem::kCds;
  s.stats = run.stats;
  const int best = single_root_entry(root, Sense::kMin);
  if (best < 0) {
    s.feasible = false;
    return s;
  }
  const std::vector<int> chosen =
      detail::trace(run.tables, detail::tw_children(ntd), ntd.root(), best);
  s.dominator.assign(g.n(), kUndominated);
  each_forget(ntd, run, chosen,
              [&](int v, const std::vector<int>& bag, int pos, const DpTable& t, int e,
                  int choice) {
                const std::uint64_t state = t.code(e, 2 * pos);
                if (state == kSelected) {
                  s.dominator[v] = kSelfDominated;
                  for (std::size_t j = 0; j < bag.size(); ++j) {
                    if (choice >> j & 1) s.dominator[bag[j]] = v;
                  }
                } else if (state == kWaiting) {
                  s.dominator[v] = bag[choice];
                }
              });
  for (int v = 0; v < g.n(); ++v) {
    if (s.dominator[v] == kSelfDominated) s.selected.push_back(v);
  }
  const DominationCheck check = check_domination(g, s.selected, s.dominator);
  if (!check.valid || check.undominated != 0) throw InternalError("traced domination is broken");
  s.capacity_ratio = check.capacity_ratio;
  s.claimed = static_cast<double>(root.objective(best).code);
  s.objective = static_cast<std::int64_t>(check.cost);
  return s;
}

Solution bdd_tw(const NiceDecomposition& ntd, const Graph& g, int max_degree,
                const RoundingContext& ctx, const SolveOptions& options) {
  if (max_degree < 0) throw DomainError("degree bound must be nonnegative");
  require_nice(ntd, g);
  const Arith ar = detail::solver_arith(ctx);
  const BddTw problem(g, max_degree, ar);
  DpRun run = detail::run_tw(ntd, problem, ar, detail::engine_options(options));
  const DpTable& root = run.tables[ntd.root()];
  const int best = single_root_entry(root, Sense::kMin);
  if (best < 0) throw InternalError("bounded degree deletion root table is empty");
  const std::vector<int> chosen =
      detail::trace(run.tables, detail::tw_children(ntd), ntd.root(), best);
  Solution s;
  s.problem = Problem::kBdd;
  s.stats = run.stats;
  each_forget(ntd, run, chosen,
              [&](int v, const std::vector<int>&, int pos, const DpTable& t, int e, int) {
                if (t.code(e, 2 * pos) == 0) s.deleted.push_back(v);
              });
  std::sort(s.deleted.begin(), s.deleted.end());
  s.claimed = static_cast<double>(root.objective(best).code);
  s.objective = static_cast<std::int64_t>(s.deleted.size());
  s.achieved_degree = residual_max_degree(g, s.deleted);
  s.guarantee_met = s.achieved_degree <= ar.ctx().slack_factor() * max_degree + 1e-9;
  return s;
}

Solution mmo_tw(const NiceDecomposition& ntd, const Graph& g, const RoundingContext& ctx,
                const SolveOptions& options) {
  require_nice(ntd, g);
  const double n = g.n();
  for (const Edge& e : g.edges()) {
    if (e.weight == 0) throw DomainError("edge weights must be positive");
    if (static_cast<double>(e.weight) > n * n * n) {
      throw DomainError("edge weight exceeds n^3");
    }
  }
  const Arith ar = detail::solver_arith(ctx);
  const MmoTw problem(g, ar);
  DpRun run = detail::run_tw(ntd, problem, ar, detail::engine_options(options));
  const DpTable& root = run.tables[ntd.root()];
  const int best = single_root_entry(root, Sense::kMin);
  if (best < 0) throw InternalError("orientation root table is empty");
  const std::vector<int> chosen =
      detail::trace(run.tables, detail::tw_children(ntd), ntd.root(), best);
  Solution s;
  s.problem = Problem::kMmo;
  s.stats = run.stats;
  s.tail.assign(g.m(), -1);
  each_forget(ntd, run, chosen,
              [&](int v, const std::vector<int>& bag, int pos, const DpTable&, int, int choice) {
                for (std::size_t j = 0; j < bag.size(); ++j) {
                  if (static_cast<int>(j) == pos) continue;
                  const int id = g.edge_index(v, bag[j]);
                  if (id < 0 || s.tail[id] >= 0) continue;
                  s.tail[id] = (choice >> j & 1) ? v : bag[j];
                }
              });
  for (int t : s.tail) {
    if (t < 0) throw InternalError("traced orientation misses an edge");
  }
  s.claimed = ar.value(root.objective(best));
  s.objective = max_weighted_outdegree(g, s.tail);
  return s;
}

Solution cvc_tw(const TreeDecomposition& td, const Graph& g, const RoundingContext& ctx,
                const SolveOptions& options) {
  td.validate_against(g);
  const CvcReduction red = reduce_cvc_to_cds(g);
  const NiceDecomposition ntd = make_nice(reduce_decomposition(td, g, red));
  Solution inner = cds_tw(ntd, red.graph, ctx, options);
  Solution s;
  s.problem = Problem::kCvc;
  s.stats = inner.stats;
  if (!inner.feasible || inner.objective >= g.n()) {
    s.feasible = false;
    return s;
  }
  for (int v : inner.selected) {
    if (v < g.n()) s.selected.push_back(v);
  }
  s.owner.assign(g.m(), -1);
  for (int id = 0; id < g.m(); ++id) s.owner[id] = inner.dominator[red.subdivision[id]];
  const CoverCheck check = check_capacitated_cover(g, s.selected, s.owner);
  if (!check.covers) throw InternalError("mapped cover is broken");
  s.capacity_ratio = check.capacity_ratio;
  s.claimed = inner.claimed;
  s.objective = static_cast<std::int64_t>(s.selected.size());
  return s;
}

}  // namespace widthapx
