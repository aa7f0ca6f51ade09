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

#include <algorithm>
#include <map>

#include "dp_engine.hpp"
#include "widthapx/errors.hpp"

namespace widthapx::detail {

std::vector<std::array<int, 2>> tw_children(const NiceDecomposition& ntd) {
  std::vector<std::array<int, 2>> children(ntd.size(), {-1, -1});
  for (int id = 0; id < ntd.size(); ++id) {
    const NiceNode& n = ntd.node(id);
    children[id] = {n.child1, n.child2};
  }
  return children;
}

DpRun run_tw(const NiceDecomposition& ntd, const TwProblem& problem, const Arith& arith,
             const EngineOptions& options) {
  const bool inst = !arith.exact();
  DpRun run;
  run.tables.resize(ntd.size());
  StatsCollector stats(arith);
  const std::vector<int> empty;
  for (int id : ntd.post_order()) {
    const NiceNode& n = ntd.node(id);
    const TableLayout layout = problem.layout(n);
    TableBuilder out(layout, inst, options.max_entries);
    switch (n.kind) {
      case NiceKind::kLeaf:
        problem.leaf(TwAt{id, n, empty, -1}, out);
        break;
      case NiceKind::kIntroduce:
      case NiceKind::kForget: {
        const NiceNode& child = ntd.node(n.child1);
        const std::vector<int>& larger = n.kind == NiceKind::kIntroduce ? n.bag : child.bag;
        const int pos = static_cast<int>(std::lower_bound(larger.begin(), larger.end(), n.vertex) -
                                         larger.begin());
        const TwAt at{id, n, child.bag, pos};
        const DpTable& c = run.tables[n.child1];
        const bool intro = n.kind == NiceKind::kIntroduce;
        produce(c.size(), options.threads, out, layout, inst, options.max_entries,
                [&](int e, TableBuilder& b) {
                  if (intro) {
                    problem.introduce(at, c, e, b);
                  } else {
                    problem.forget(at, c, e, b);
                  }
                });
        break;
      }
      case NiceKind::kJoin: {
        const TwAt at{id, n, ntd.node(n.child1).bag, -1};
        const DpTable& a = run.tables[n.child1];
        const DpTable& bt = run.tables[n.child2];
        std::map<std::vector<std::uint64_t>, std::vector<int>> groups;
        std::vector<std::uint64_t> k;
        for (int f = 0; f < bt.size(); ++f) {
          problem.join_key(bt, f, k);
          groups[k].push_back(f);
        }
        produce(a.size(), options.threads, out, layout, inst, options.max_entries,
                [&](int e, TableBuilder& b) {
                  std::vector<std::uint64_t> mine;
                  problem.join_key(a, e, mine);
                  auto it = groups.find(mine);
                  if (it == groups.end()) return;
                  for (int f : it->second) problem.join(at, a, e, bt, f, b);
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
