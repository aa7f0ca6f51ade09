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

// Bottom-up table drivers shared by the solvers. Problem callbacks may run
// concurrently on different source entries and must not keep mutable state.

#ifndef WIDTHAPX_SRC_DP_ENGINE_HPP_
#define WIDTHAPX_SRC_DP_ENGINE_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "widthapx/clique_width.hpp"
#include "widthapx/scalar.hpp"
#include "widthapx/tree_decomposition.hpp"

namespace widthapx::detail {

struct EngineOptions {
  int threads = 1;
  std::int64_t max_entries = 20'000'000;
};

struct DpRun {
  std::vector<DpTable> tables;
  TableStats stats;
};

// Candidate stream for (node, source entries, choice); draws advance per
// coordinate.
RandomStream stream_for(const Arith& arith, int node, int a, int b, std::int64_t choice);

// Chosen entry per node, following provenance from root_entry.
std::vector<int> trace(const std::vector<DpTable>& tables,
                       const std::vector<std::array<int, 2>>& children, int root, int root_entry);

struct CwAt {
  int node;
  const CwNode& op;
  const std::vector<int>& sizes;   // label class sizes after this node
  const std::vector<int>* sizes1;  // ... after the first child, if any
  const std::vector<int>* sizes2;
};

class CwProblem {
 public:
  virtual ~CwProblem() = default;
  virtual TableLayout layout() const = 0;
  virtual void introduce(const CwAt& at, TableBuilder& out) const = 0;
  virtual void rename(const CwAt& at, const DpTable& child, int e, TableBuilder& out) const = 0;
  virtual void unite(const CwAt& at, const DpTable& a, int ea, const DpTable& b, int eb,
                     TableBuilder& out) const = 0;
  virtual void join(const CwAt& at, const DpTable& child, int e, TableBuilder& out) const = 0;
};

DpRun run_cw(const CwExpression& expr, const CwProblem& problem, const Arith& arith,
             const EngineOptions& options);
std::vector<std::array<int, 2>> cw_children(const CwExpression& expr);

struct TwAt {
  int node;
  const NiceNode& nn;
  const std::vector<int>& child_bag;  // empty for leaves
  int pos;  // index of the introduced/forgotten vertex in the larger bag
};

class TwProblem {
 public:
  virtual ~TwProblem() = default;
  virtual TableLayout layout(const NiceNode& node) const = 0;
  virtual void leaf(const TwAt& at, TableBuilder& out) const = 0;
  virtual void introduce(const TwAt& at, const DpTable& child, int e, TableBuilder& out) const = 0;
  virtual void forget(const TwAt& at, const DpTable& child, int e, TableBuilder& out) const = 0;
  // Join pairs entries whose projections agree.
  virtual void join_key(const DpTable& table, int e, std::vector<std::uint64_t>& out) const = 0;
  virtual void join(const TwAt& at, const DpTable& a, int ea, const DpTable& b, int eb,
                    TableBuilder& out) const = 0;
};

DpRun run_tw(const NiceDecomposition& ntd, const TwProblem& problem, const Arith& arith,
             const EngineOptions& options);
std::vector<std::array<int, 2>> tw_children(const NiceDecomposition& ntd);

}  // namespace widthapx::detail

#endif  // WIDTHAPX_SRC_DP_ENGINE_HPP_
