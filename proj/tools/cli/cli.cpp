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

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "widthapx/addition_tree.hpp"
#include "widthapx/errors.hpp"
#include "widthapx/families.hpp"
#include "widthapx/flow.hpp"
#include "widthapx/oracles.hpp"
#include "widthapx/solvers.hpp"

namespace widthapx::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  if (const char* env = std::getenv("WIDTHAPX_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("WIDTHAPX_SEED is not an unsigned integer");
    }
  }
  return 0;
}

std::vector<int> one_based(const std::vector<int>& v) {
  std::vector<int> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](int x) { return x + 1; });
  return out;
}

// ------------------------------------------------------------ solving

struct Certificate {
  std::optional<CwExpression> cw;
  std::optional<TreeDecomposition> td;
};

struct ProblemParams {
  int k = 0;
  int max_degree = -1;
};

void check_params(Problem p, const ProblemParams& params) {
  if (p == Problem::kEqcolor && params.k < 1) throw UsageError("eqcolor needs --k >= 1");
  if (p == Problem::kBdd && params.max_degree < 0) throw UsageError("bdd needs --max-degree >= 0");
}

void check_certificate(Problem p, const Certificate& c) {
  if (c.cw.has_value() == c.td.has_value()) {
    throw UsageError("give exactly one of --cw and --td");
  }
  if (c.cw && !supports_cw(p)) {
    if (p == Problem::kMmo) {
      throw UsageError(
          "mmo has no clique-width solver: beating ratio 3/2 is NP-hard already on cliques; "
          "use --td");
    }
    throw UsageError(std::string(to_string(p)) + " is solved on tree decompositions; use --td");
  }
  if (c.td && !supports_td(p)) {
    throw UsageError(std::string(to_string(p)) + " is solved on clique-width expressions; use --cw");
  }
}

NiceDecomposition nice_for(Problem p, const Graph& g, const TreeDecomposition& td) {
  if (p == Problem::kCvc) {
    const CvcReduction red = reduce_cvc_to_cds(g);
    return make_nice(reduce_decomposition(td, g, red));
  }
  return make_nice(td);
}

int structure_height(Problem p, const Graph& g, const Certificate& c) {
  if (c.cw) return c.cw->height();
  return nice_for(p, g, *c.td).height();
}

int structure_width(const Certificate& c) {
  return c.cw ? c.cw->width() : c.td->width();
}

Solution dispatch(Problem p, const Graph& g, const Certificate& c, const RoundingContext& ctx,
                  const ProblemParams& params, const SolveOptions& options) {
  if (c.cw) {
    switch (p) {
      case Problem::kMaxCut:
        return maxcut_cw(*c.cw, g, ctx, options);
      case Problem::kEds:
        return eds_cw(*c.cw, g, ctx, options);
      case Problem::kEqcolor:
        return eqcolor_cw(*c.cw, g, params.k, ctx, options);
      case Problem::kCds:
        return cds_cw(*c.cw, g, ctx, options);
      case Problem::kBdd:
        return bdd_cw(*c.cw, g, params.max_degree, ctx, options);
      default:
        break;
    }
    throw UsageError("unsupported problem for --cw");
  }
  if (p == Problem::kCvc) return cvc_tw(*c.td, g, ctx, options);
  c.td->validate_against(g);
  const NiceDecomposition ntd = make_nice(*c.td);
  switch (p) {
    case Problem::kEqcolor:
      return eqcolor_tw(ntd, g, params.k, ctx, options);
    case Problem::kCds:
      return cds_tw(ntd, g, ctx, options);
    case Problem::kBdd:
      return bdd_tw(ntd, g, params.max_degree, ctx, options);
    case Problem::kMmo:
      return mmo_tw(ntd, g, ctx, options);
    default:
      break;
  }
  throw UsageError("unsupported problem for --td");
}

double effective_delta(Problem p, RoundingMode mode, const Graph& g, const Certificate& c,
                       double epsilon, std::optional<double> delta, std::optional<double> c0) {
  if (mode == RoundingMode::kExact) return 0.0;
  if (delta) return *delta;
  if (mode == RoundingMode::kDeterministic) {
    return choose_delta_deterministic(structure_height(p, g, c), epsilon, p);
  }
  return randomized_delta_preset(g.n(), epsilon, c0.value_or(default_c0(p)));
}

json stats_json(const TableStats& s) {
  json j;
  j["nodes"] = s.nodes;
  j["total_entries"] = s.total_entries;
  j["max_entries"] = s.max_entries;
  j["distinct_exponents"] = s.distinct_exponents;
  j["max_ratio"] = s.max_ratio;
  j["max_abs_error"] = s.max_abs_error;
  j["max_depth"] = s.max_depth;
  j["zero_mismatches"] = s.zero_mismatches;
  return j;
}

json solution_json(const Solution& s, const Graph& g) {
  json j = json::object();
  switch (s.problem) {
    case Problem::kMaxCut:
      j["side"] = s.side;
      break;
    case Problem::kEds: {
      json edges = json::array();
      for (int id : s.edges) edges.push_back({g.edges()[id].u + 1, g.edges()[id].v + 1});
      j["edges"] = edges;
      j["cover"] = one_based(s.selected);
      break;
    }
    case Problem::kEqcolor:
      j["color"] = one_based(s.color);
      j["class_sizes"] = s.class_sizes;
      j["ratio"] = std::isfinite(s.ratio) ? json(s.ratio) : json(nullptr);
      break;
    case Problem::kCds: {
      j["selected"] = one_based(s.selected);
      std::vector<int> assignment(s.dominator.size());
      for (std::size_t v = 0; v < s.dominator.size(); ++v) {
        const int d = s.dominator[v];
        assignment[v] = d == kSelfDominated ? 0 : d == kUndominated ? -1 : d + 1;
      }
      j["assignment"] = assignment;
      j["undominated"] = s.undominated;
      j["capacity_ratio"] = s.capacity_ratio;
      break;
    }
    case Problem::kCvc:
      j["cover"] = one_based(s.selected);
      j["owner"] = one_based(s.owner);
      j["capacity_ratio"] = s.capacity_ratio;
      break;
    case Problem::kBdd:
      j["deleted"] = one_based(s.deleted);
      j["achieved_degree"] = s.achieved_degree;
      j["guarantee_met"] = s.guarantee_met;
      break;
    case Problem::kMmo:
      j["tail"] = one_based(s.tail);
      break;
  }
  if (!s.join_choices.empty()) j["join_choices"] = s.join_choices;
  return j;
}

std::vector<std::string> lemma_violations(const Solution& s, const RoundingContext& ctx) {
  std::vector<std::string> out;
  if (s.stats.zero_mismatches > 0) out.push_back("zero-equivalence");
  if (ctx.mode() == RoundingMode::kDeterministic && s.stats.max_ratio >= 1.0 + ctx.epsilon()) {
    out.push_back("deterministic-ratio-bound");
  }
  if (!ctx.exact()) {
    const double bound = std::ceil(std::log(ctx.cap_value()) / ctx.log_base()) + 2;
    if (static_cast<double>(s.stats.distinct_exponents) > bound) out.push_back("exponent-cap");
  }
  if (s.problem == Problem::kBdd && !s.guarantee_met) out.push_back("degree-guarantee");
  return out;
}

struct SolveArgs {
  std::string problem;
  std::string graph;
  std::string cw;
  std::string td;
  double epsilon = 0.1;
  std::optional<double> delta;
  std::optional<std::uint64_t> seed;
  std::string mode = "randomized";
  int k = 0;
  int max_degree = -1;
  bool tsv = false;
  bool omit_timing = false;
  int threads = 1;
  std::optional<double> c0;
  std::int64_t max_entries = 20'000'000;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const Problem p = parse_problem(a.problem);
  const Graph g = Graph::parse(read_file(a.graph));
  Certificate c;
  if (!a.cw.empty()) c.cw = CwExpression::parse(read_file(a.cw));
  if (!a.td.empty()) c.td = TreeDecomposition::parse(read_file(a.td));
  check_certificate(p, c);
  const ProblemParams params{a.k, a.max_degree};
  check_params(p, params);
  const RoundingMode mode = parse_rounding_mode(a.mode);
  const std::uint64_t seed = resolve_seed(a.seed);
  const double delta = effective_delta(p, mode, g, c, a.epsilon, a.delta, a.c0);
  const RoundingContext ctx = solver_context(p, g, mode, delta, a.epsilon, seed);
  SolveOptions options;
  options.threads = a.threads;
  options.max_entries = a.max_entries;

  const auto start = std::chrono::steady_clock::now();
  const Solution s = dispatch(p, g, c, ctx, params, options);
  const double wall = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  const std::vector<std::string> violations = lemma_violations(s, ctx);

  if (a.tsv) {
    out << "problem\tn\tm\twidth\tmode\tdelta\tepsilon\tseed\tfeasible\tclaimed\ttrue\t"
           "total_entries\tmax_entries\tdistinct_exponents\tmax_ratio";
    if (!a.omit_timing) out << "\twall_ms";
    out << "\n";
    out << to_string(p) << '\t' << g.n() << '\t' << g.m() << '\t' << structure_width(c) << '\t'
        << to_string(mode) << '\t' << delta << '\t' << a.epsilon << '\t' << seed << '\t'
        << (s.feasible ? 1 : 0) << '\t' << s.claimed << '\t' << s.objective << '\t'
        << s.stats.total_entries << '\t' << s.stats.max_entries << '\t'
        << s.stats.distinct_exponents << '\t' << s.stats.max_ratio;
    if (!a.omit_timing) out << '\t' << wall;
    out << "\n";
  } else {
    json r;
    r["problem"] = std::string(to_string(p));
    r["instance"] = {{"n", g.n()},
                     {"m", g.m()},
                     {"certificate", c.cw ? "cw" : "td"},
                     {"width", structure_width(c)},
                     {"height", structure_height(p, g, c)}};
    r["mode"] = std::string(to_string(mode));
    r["delta"] = delta;
    r["epsilon"] = a.epsilon;
    r["seed"] = seed;
    r["feasible"] = s.feasible;
    r["objective"] = {{"claimed", std::isfinite(s.claimed) ? json(s.claimed) : json(nullptr)},
                      {"true", s.objective}};
    r["solution"] = s.feasible ? solution_json(s, g) : json(nullptr);
    r["table_stats"] = stats_json(s.stats);
    if (!a.omit_timing) r["wall_time_ms"] = wall;
    r["lemma_violations"] = violations;
    out << r.dump(2) << "\n";
  }
  if (!violations.empty()) return kExitInternal;
  return s.feasible ? kExitOk : kExitInfeasible;
}

// ------------------------------------------------------------ oracle

int cmd_oracle(const std::string& problem, const std::string& graph, int k, int max_degree,
               std::ostream& out) {
  const Problem p = parse_problem(problem);
  const Graph g = Graph::parse(read_file(graph));
  check_params(p, ProblemParams{k, max_degree});
  OracleResult r;
  json w = json::object();
  switch (p) {
    case Problem::kMaxCut:
      r = oracle_maxcut(g);
      w["side"] = r.side;
      break;
    case Problem::kEds: {
      r = oracle_eds(g);
      json edges = json::array();
      for (int id : r.edges) edges.push_back({g.edges()[id].u + 1, g.edges()[id].v + 1});
      w["edges"] = edges;
      break;
    }
    case Problem::kEqcolor:
      r = oracle_eqcolor(g, k);
      if (r.feasible) {
        w["color"] = one_based(r.color);
        w["class_sizes"] = r.class_sizes;
        w["ratio"] = std::isfinite(r.ratio) ? json(r.ratio) : json(nullptr);
      }
      break;
    case Problem::kCds:
      r = oracle_cds(g);
      w["selected"] = one_based(r.selected);
      break;
    case Problem::kCvc:
      r = oracle_cvc(g);
      w["cover"] = one_based(r.selected);
      if (r.feasible) w["owner"] = one_based(r.owner);
      break;
    case Problem::kBdd:
      r = oracle_bdd(g, max_degree);
      w["deleted"] = one_based(r.selected);
      break;
    case Problem::kMmo:
      r = oracle_mmo(g);
      w["tail"] = one_based(r.tail);
      break;
  }
  json j;
  j["problem"] = std::string(to_string(p));
  j["n"] = g.n();
  j["m"] = g.m();
  j["feasible"] = r.feasible;
  j["optimum"] = r.feasible ? json(r.optimum) : json(nullptr);
  j["enumerated"] = r.enumerated;
  j["witness"] = r.feasible ? w : json(nullptr);
  out << j.dump(2) << "\n";
  return r.feasible ? kExitOk : kExitInfeasible;
}

// ------------------------------------------------------------ aat

struct AatArgs {
  std::string shape = "caterpillar";
  int size = 1000;
  double delta = 0.01;
  int trials = 1;
  std::optional<std::uint64_t> seed;
  std::uint64_t max_input = 100;
  double bias = 1.0;
  std::string tree;
  std::string mode = "randomized";
  double epsilon = 0.1;
  double lambda = 0;
  bool json_out = false;
  int threads = 1;
};

int cmd_aat_simulate(const AatArgs& a, std::ostream& out) {
  ConcentrationConfig cfg;
  cfg.shape = parse_tree_shape(a.shape);
  cfg.leaves = a.size;
  cfg.max_input = a.max_input;
  cfg.bias = a.bias;
  cfg.trials = a.trials;
  cfg.threads = a.threads;
  AdditionTree fixed;
  if (cfg.shape == TreeShape::kFromFile) {
    if (a.tree.empty()) throw UsageError("--shape file needs --tree");
    fixed = AdditionTree::parse(read_file(a.tree));
    cfg.fixed_tree = &fixed;
  }
  if (a.trials < 1) throw UsageError("--trials must be at least 1");
  const RoundingContext ctx(parse_rounding_mode(a.mode), a.delta, a.epsilon,
                            std::max(1, a.size), resolve_seed(a.seed));
  const ConcentrationReport rep = simulate_concentration(cfg, ctx);
  if (a.json_out) {
    json rows = json::array();
    for (const TrialResult& t : rep.rows) {
      rows.push_back({{"trial", t.trial},
                      {"nodes", t.nodes},
                      {"height", t.height},
                      {"balanced_height", t.balanced_height},
                      {"max_abs_error", t.max_abs_error},
                      {"max_ratio", t.max_ratio},
                      {"violations", t.violations}});
    }
    const double nodes = rep.rows.empty() ? 0 : rep.rows.front().nodes;
    const int bh = rep.rows.empty() ? 0 : rep.rows.front().balanced_height;
    const double lambda = a.lambda > 0 ? a.lambda : std::max(1.0, rep.max_abs_error());
    json j;
    j["shape"] = a.shape;
    j["delta"] = a.delta;
    j["seed"] = ctx.seed();
    j["trials"] = rep.trials();
    j["rows"] = rows;
    j["summary"] = {{"max_abs_error", rep.max_abs_error()},
                    {"total_violations", rep.total_violations()},
                    {"epsilon", a.epsilon},
                    {"tail_fraction_eps", rep.tail_fraction(a.epsilon)},
                    {"lambda", lambda},
                    {"lambda_tail_fraction", rep.lambda_tail_fraction(lambda)},
                    {"caterpillar_tail_bound", caterpillar_tail_bound(nodes, a.delta, lambda)},
                    {"tree_tail_bound", tree_tail_bound(nodes, std::max(1, bh), a.delta, lambda)}};
    out << j.dump(2) << "\n";
  } else {
    out << "trial\tnodes\theight\tbalanced_height\tmax_abs_error\tmax_ratio\tviolations\n";
    for (const TrialResult& t : rep.rows) {
      out << t.trial << '\t' << t.nodes << '\t' << t.height << '\t' << t.balanced_height << '\t'
          << t.max_abs_error << '\t' << t.max_ratio << '\t' << t.violations << "\n";
    }
  }
  return rep.total_violations() == 0 ? kExitOk : kExitInternal;
}

int cmd_aat_eval(const AatArgs& a, std::ostream& out) {
  if (a.tree.empty()) throw UsageError("aat eval needs --tree");
  const AdditionTree tree = AdditionTree::parse(read_file(a.tree));
  const RoundingContext ctx(parse_rounding_mode(a.mode), a.delta, a.epsilon,
                            std::max(1, tree.leaf_count()), resolve_seed(a.seed));
  const TreeEvaluation ev = eval_approx(tree, ctx);
  const ErrorProfile prof = error_profile(ev);
  std::vector<LemmaViolation> bad = check_step_lemmas(ev);
  const std::vector<LemmaViolation> inv = check_tree_invariants(tree, ev);
  bad.insert(bad.end(), inv.begin(), inv.end());
  json nodes = json::array();
  for (int id = 0; id < tree.size(); ++id) {
    nodes.push_back({{"id", id + 1},
                     {"exact", ev.exact[id]},
                     {"approx", ev.approx_value(id)},
                     {"lambda", std::isnan(ev.lambda[id]) ? json(nullptr) : json(ev.lambda[id])}});
  }
  json viol = json::array();
  for (const LemmaViolation& v : bad) {
    viol.push_back({{"check", v.check}, {"node", v.node + 1}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  }
  json j;
  j["delta"] = a.delta;
  j["seed"] = ctx.seed();
  j["root"] = {{"exact", ev.exact[tree.root()]}, {"approx", ev.approx_value(tree.root())}};
  j["max_abs_error"] = prof.max_abs_error;
  j["max_ratio"] = prof.max_ratio;
  j["nodes"] = nodes;
  j["violations"] = viol;
  out << j.dump(2) << "\n";
  return bad.empty() ? kExitOk : kExitInternal;
}

// ------------------------------------------------------------ gen

// Random capacities on 0..max_capacity and weights on 1..max_weight.
struct Decoration {
  std::uint64_t max_capacity = 0;
  std::uint64_t max_weight = 1;
};

Graph decorate(const Graph& g, const Decoration& d, std::uint64_t seed) {
  std::mt19937_64 rng(make_stream_id({seed, 0x67656eULL}));
  Graph out(g.n());
  for (const Edge& e : g.edges()) {
    const std::uint64_t w =
        d.max_weight > 1 ? std::uniform_int_distribution<std::uint64_t>(1, d.max_weight)(rng) : 1;
    out.add_edge(e.u, e.v, w);
  }
  if (d.max_capacity > 0) {
    std::vector<std::uint64_t> caps(g.n());
    for (auto& c : caps) c = std::uniform_int_distribution<std::uint64_t>(0, d.max_capacity)(rng);
    out.set_capacities(std::move(caps));
  }
  return out;
}

struct GenArgs {
  std::string family;
  int n = 10;
  std::optional<std::uint64_t> seed;
  std::string out_graph;
  std::string out_cw;
  std::string out_td;
  FamilyOptions options;
  Decoration decoration;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const FamilyKind kind = parse_family_kind(a.family);
  if (a.out_graph.empty()) throw UsageError("gen needs --out-graph");
  const std::uint64_t seed = resolve_seed(a.seed);
  const FamilyInstance inst = generate_family(kind, a.n, seed, a.options);
  if (!a.out_cw.empty() && !inst.cw) {
    throw UsageError(std::string(to_string(kind)) + " comes without a clique-width expression");
  }
  if (!a.out_td.empty() && !inst.td) {
    throw UsageError(std::string(to_string(kind)) + " comes without a tree decomposition");
  }
  const Graph g = decorate(inst.graph, a.decoration, seed);
  write_file(a.out_graph, g.render());
  if (!a.out_cw.empty()) write_file(a.out_cw, inst.cw->render());
  if (!a.out_td.empty()) write_file(a.out_td, inst.td->render());
  json j;
  j["family"] = std::string(to_string(kind));
  j["n"] = g.n();
  j["m"] = g.m();
  j["seed"] = seed;
  if (inst.cw) j["cw_width"] = inst.cw->width();
  if (inst.td) j["td_width"] = inst.td->width();
  out << j.dump(2) << "\n";
  return kExitOk;
}

// ------------------------------------------------------------ bench

struct BenchArgs {
  std::string family = "cograph";
  std::string problem = "maxcut";
  std::vector<int> sizes{20, 40, 80};
  std::vector<std::string> modes{"exact", "randomized"};
  double epsilon = 0.25;
  int trials = 1;
  std::optional<std::uint64_t> seed;
  int k = 2;
  int max_degree = 2;
  std::optional<double> c0;
  int exact_limit = 200;
  int threads = 1;
  bool omit_timing = false;
  FamilyOptions options;
  Decoration decoration;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  const Problem p = parse_problem(a.problem);
  const FamilyKind kind = parse_family_kind(a.family);
  const ProblemParams params{a.k, a.max_degree};
  check_params(p, params);
  const std::uint64_t seed = resolve_seed(a.seed);
  const bool maximize = p == Problem::kMaxCut;
  out << "family\tproblem\tn\ttrial\tmode\tdelta\ttotal_entries\tmax_entries\tdistinct_exponents";
  if (!a.omit_timing) out << "\twall_ms";
  out << "\tobjective\treference\tratio\n";
  SolveOptions options;
  options.threads = a.threads;
  for (int n : a.sizes) {
    for (int t = 0; t < a.trials; ++t) {
      const std::uint64_t iseed =
          make_stream_id({seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t)});
      FamilyInstance inst = generate_family(kind, n, iseed, a.options);
      inst.graph = decorate(inst.graph, a.decoration, iseed);
      Certificate c;
      if (supports_cw(p) && inst.cw) {
        c.cw = inst.cw;
      } else if (supports_td(p) && inst.td) {
        c.td = inst.td;
      } else {
        throw UsageError("family " + a.family + " has no certificate usable for " + a.problem);
      }
      std::optional<Solution> reference;
      double reference_ms = 0;
      if (n <= a.exact_limit) {
        const RoundingContext ctx =
            solver_context(p, inst.graph, RoundingMode::kExact, 0, a.epsilon, iseed);
        const auto start = std::chrono::steady_clock::now();
        reference = dispatch(p, inst.graph, c, ctx, params, options);
        reference_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      }
      for (const std::string& m : a.modes) {
        const RoundingMode mode = parse_rounding_mode(m);
        const double delta = effective_delta(p, mode, inst.graph, c, a.epsilon, std::nullopt, a.c0);
        const RoundingContext ctx = solver_context(p, inst.graph, mode, delta, a.epsilon, iseed);
        const bool reuse = mode == RoundingMode::kExact && reference.has_value();
        const auto start = std::chrono::steady_clock::now();
        const Solution s = reuse ? *reference : dispatch(p, inst.graph, c, ctx, params, options);
        const double wall =
            reuse ? reference_ms
                  : std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        out << a.family << '\t' << a.problem << '\t' << n << '\t' << t << '\t' << m << '\t' << delta
            << '\t' << s.stats.total_entries << '\t' << s.stats.max_entries << '\t'
            << s.stats.distinct_exponents;
        if (!a.omit_timing) out << '\t' << wall;
        out << '\t' << s.objective << '\t';
        if (reference) {
          const double ref = static_cast<double>(reference->objective);
          const double obj = static_cast<double>(s.objective);
          double ratio = 1.0;
          if (ref != obj) ratio = maximize ? ref / obj : obj / ref;
          out << reference->objective << '\t' << ratio;
        } else {
          out << "NA\tNA";
        }
        out << "\n";
      }
    }
  }
  return kExitOk;
}

}  // namespace

double default_c0(Problem p) {
  switch (p) {
    case Problem::kBdd:
    case Problem::kMmo:
      return 3e-5;
    case Problem::kCds:
    case Problem::kCvc:
      return 5e-4;
    default:
      return kDefaultC0;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"widthapx: rounded dynamic programs over graph width certificates"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  int threads = 1;
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  SolveArgs sa;
  CLI::App* solve = app.add_subcommand("solve", "Run a solver on a graph and a width certificate");
  solve->add_option("problem", sa.problem, "maxcut|eds|eqcolor|cds|cvc|bdd|mmo")->required();
  solve->add_option("--graph", sa.graph, "Graph file")->required();
  solve->add_option("--cw", sa.cw, "Clique-width expression file");
  solve->add_option("--td", sa.td, "Tree decomposition file (PACE td)");
  solve->add_option("--epsilon", sa.epsilon, "Target accuracy in (0,1)");
  solve->add_option("--delta", sa.delta, "Rounding base; default from the mode's preset");
  solve->add_option("--seed", sa.seed, "Seed, falls back to WIDTHAPX_SEED");
  solve->add_option("--mode", sa.mode, "randomized|deterministic|exact");
  solve->add_option("--k", sa.k, "Number of colors (eqcolor)");
  solve->add_option("--max-degree", sa.max_degree, "Degree bound (bdd)");
  solve->add_option("--c0", sa.c0, "Constant of the randomized delta preset");
  solve->add_option("--max-entries", sa.max_entries, "Per-table entry limit");
  solve->add_option("--threads", sa.threads, "Worker threads")->check(CLI::PositiveNumber);
  solve->add_flag("--json", "JSON report (default)");
  solve->add_flag("--tsv", sa.tsv, "One TSV row instead of JSON");
  solve->add_flag("--omit-timing", sa.omit_timing, "Leave out wall-clock fields");

  std::string o_problem;
  std::string o_graph;
  int o_k = 0;
  int o_max_degree = -1;
  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive optimum for small graphs");
  oracle->add_option("problem", o_problem)->required();
  oracle->add_option("--graph", o_graph)->required();
  oracle->add_option("--k", o_k);
  oracle->add_option("--max-degree", o_max_degree);

  AatArgs aa;
  CLI::App* aat = app.add_subcommand("aat", "Approximate addition trees");
  aat->require_subcommand(1);
  CLI::App* simulate = aat->add_subcommand("simulate", "Monte-Carlo error concentration");
  CLI::App* eval = aat->add_subcommand("eval", "Evaluate one tree");
  for (CLI::App* s : {simulate, eval}) {
    s->add_option("--delta", aa.delta)->required();
    s->add_option("--seed", aa.seed);
    s->add_option("--mode", aa.mode, "randomized|deterministic|exact");
    s->add_option("--epsilon", aa.epsilon);
    s->add_option("--tree", aa.tree, "Tree file");
  }
  simulate->add_option("--shape", aa.shape, "caterpillar|balanced|random|file");
  simulate->add_option("--size", aa.size, "Number of leaves");
  simulate->add_option("--trials", aa.trials);
  simulate->add_option("--max-input", aa.max_input, "Leaf inputs uniform on 1..U");
  simulate->add_option("--bias", aa.bias, "Split bias for random shapes");
  simulate->add_option("--lambda", aa.lambda, "Error level for the tail summary");
  simulate->add_option("--threads", aa.threads)->check(CLI::PositiveNumber);
  simulate->add_flag("--json", aa.json_out, "JSON with tail summary");
  simulate->add_flag("--tsv", "TSV rows (default)");

  GenArgs ga;
  CLI::App* gen = app.add_subcommand("gen", "Generate a graph family with certificates");
  gen->add_option("family", ga.family, "clique|path|cycle|star|cograph|ktree|gnp")->required();
  gen->add_option("--n", ga.n)->required();
  gen->add_option("--seed", ga.seed);
  gen->add_option("--out-graph", ga.out_graph)->required();
  gen->add_option("--out-cw", ga.out_cw);
  gen->add_option("--out-td", ga.out_td);
  gen->add_option("--width", ga.options.k, "ktree width");
  gen->add_option("--join-prob", ga.options.join_prob);
  gen->add_option("--edge-prob", ga.options.edge_prob);
  gen->add_option("--keep-prob", ga.options.keep_prob);
  gen->add_option("--max-capacity", ga.decoration.max_capacity, "Random capacities on 0..C");
  gen->add_option("--max-weight", ga.decoration.max_weight, "Random edge weights on 1..W");

  BenchArgs ba;
  CLI::App* bench = app.add_subcommand("bench", "Exact versus rounded table sizes");
  bench->add_option("--family", ba.family);
  bench->add_option("--problem", ba.problem);
  bench->add_option("--sizes", ba.sizes)->delimiter(',');
  bench->add_option("--modes", ba.modes)->delimiter(',');
  bench->add_option("--epsilon", ba.epsilon);
  bench->add_option("--trials", ba.trials);
  bench->add_option("--seed", ba.seed);
  bench->add_option("--k", ba.k);
  bench->add_option("--max-degree", ba.max_degree);
  bench->add_option("--c0", ba.c0);
  bench->add_option("--exact-limit", ba.exact_limit, "Largest n with an exact reference run");
  bench->add_option("--width", ba.options.k);
  bench->add_option("--join-prob", ba.options.join_prob);
  bench->add_option("--edge-prob", ba.options.edge_prob);
  bench->add_option("--max-capacity", ba.decoration.max_capacity);
  bench->add_option("--max-weight", ba.decoration.max_weight);
  bench->add_option("--threads", ba.threads)->check(CLI::PositiveNumber);
  bench->add_flag("--omit-timing", ba.omit_timing);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (solve->parsed()) {
      if (sa.threads == 1) sa.threads = threads;
      return cmd_solve(sa, out);
    }
    if (oracle->parsed()) return cmd_oracle(o_problem, o_graph, o_k, o_max_degree, out);
    if (simulate->parsed()) {
      if (aa.threads == 1) aa.threads = threads;
      return cmd_aat_simulate(aa, out);
    }
    if (eval->parsed()) return cmd_aat_eval(aa, out);
    if (gen->parsed()) return cmd_gen(ga, out);
    if (bench->parsed()) {
      if (ba.threads == 1) ba.threads = threads;
      return cmd_bench(ba, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LimitError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  err << "usage error: no command\n";
  return kExitUsage;
}

}  // namespace widthapx::cli
