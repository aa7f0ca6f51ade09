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

#include "dp_engine.hpp"
#include "widthapx/errors.hpp"

namespace widthapx::detail {

RandomStream stream_for(const Arith& arith, int node, int a, int b, std::int64_t choice) {
  return RandomStream(arith.ctx().seed(),
                      make_stream_id({static_cast<std::uint64_t>(node),
                                      static_cast<std::uint64_t>(a + 1),
                                      static_cast<std::uint64_t>(b + 1),
                                      static_cast<std::uint64_t>(choice)}));
}

std::vector<int> trace(const std::vector<DpTable>& tables,
                       const std::vector<std::array<int, 2>>& children, int root, int root_entry) {
  std::vector<int> chosen(tables.size(), -1);
  std::vector<int> stack{root};
  chosen[root] = root_entry;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    const int e = chosen[v];
    if (e < 0 || e >= tables[v].size()) throw InternalError("broken provenance");
    const Provenance& p = tables[v].provenance(e);
    const int src[2] = {p.a, p.b};
    for (int k = 0; k < 2; ++k) {
      const int c = children[v][k];
      if (c < 0) continue;
      if (src[k] < 0) throw InternalError("broken provenance: missing source entry");
      chosen[c] = src[k];
      stack.push_back(c);
    }
  }
  return chosen;
}

std::vector<std::array<int, 2>> cw_children(const CwExpression& expr) {
  std::vector<std::array<int, 2>> children(expr.size(), {-1, -1});
  for (int id = 0; id < expr.size(); ++id) {
    const CwNode& n = expr.node(id);
    if (n.op == CwOp::kIntroduce) continue;
    children[id][0] = n.child1;
    if (n.op == CwOp::kUnion) children[id][1] = n.child2;
  }
  return children;
}

DpRun run_cw(const CwExpression& expr, const CwProblem& problem, const Arith& arith,
             const EngineOptions& options) {
  const TableLayout layout = problem.layout();
  const bool inst = !arith.exact();
  const std::vector<std::vector<int>> sizes = expr.label_sizes();
  DpRun run;
  run.tables.resize(expr.size());
  StatsCollector stats(arith);
  for (int id : expr.post_order()) {
    const CwNode& n = expr.node(id);
    const CwAt at{id, n, sizes[id], n.child1 >= 0 ? &sizes[n.child1] : nullptr,
                  n.child2 >= 0 ? &sizes[n.child2] : nullptr};
    TableBuilder out(layout, inst, options.max_entries);
    switch (n.op) {
      case CwOp::kIntroduce:
        problem.introduce(at, out);
        break;
      case CwOp::kRename: {
        const DpTable& c = run.tables[n.child1];
        produce(c.size(), options.threads, out, layout, inst, options.max_entries,
                [&](int e, TableBuilder& b) { problem.rename(at, c, e, b); });
        break;
      }
      case CwOp::kJoin: {
        const DpTable& c = run.tables[n.child1];
        produce(c.size(), options.threads, out, layout, inst, options.max_entries,
                [&](int e, TableBuilder& b) { problem.join(at, c, e, b); });
        break;
      }
      case CwOp::kUnion: {
        const DpTable& a = run.tables[n.child1];
        const DpTable& bt = run.tables[n.child2];
        produce(a.size(), options.threads, out, layout, inst, options.max_entries,
                [&](int e, TableBuilder& b) {
                  for (int f = 0; f < bt.size(); ++f) problem.unite(at, a, e, bt, f, b);
                });
        break;
      }
    }
    run.tables[id] = out.finish();
    stats.add(run.tables[id]);
  }
  run.stats = stats.finish();
  return run;
}

}  // namespace widthapx::detail
