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

// DP coordinates, tables and their instrumentation.

#ifndef WIDTHAPX_SCALAR_HPP_
#define WIDTHAPX_SCALAR_HPP_

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "widthapx/rounding.hpp"

namespace widthapx {

// One table coordinate. A rounded coordinate holds an ApproxValue code in the
// rounding modes and the plain integer in exact mode; an exact coordinate
// always holds the integer. Keys compare by code only.
struct Scalar {
  std::uint64_t code = 0;
  double shadow = 0;        // exact value of the quantity being estimated
  std::uint16_t depth = 0;  // ⊕ steps on the longest path into this value
};

class Arith {
 public:
  explicit Arith(const RoundingContext& ctx);

  const RoundingContext& ctx() const { return ctx_; }
  bool exact() const { return ctx_.exact(); }

  static Scalar zero() { return {}; }
  // The value 1, exact in every mode.
  Scalar one() const;
  // Exact integer coordinate, never rounded.
  static Scalar count(std::uint64_t x) { return {x, static_cast<double>(x), 0}; }

  // Rounded entry of a raw integer (roundSingle). nullopt when capped.
  std::optional<Scalar> enter(std::uint64_t x, RandomStream& stream) const;
  std::optional<Scalar> add(Scalar a, Scalar b, RandomStream& stream) const;
  // a ⊕ m for an exact integer m.
  std::optional<Scalar> add_int(Scalar a, std::uint64_t m, RandomStream& stream) const;
  // a ⊕ x where x is a real combination of table values. x_shadow and
  // x_depth describe the exact quantity x estimates.
  std::optional<Scalar> add_real(Scalar a, double x, double x_shadow, std::uint16_t x_depth,
                                 RandomStream& stream) const;

  double value(Scalar a) const;
  // Natural log of value(a); -inf for zero.
  double log_value(Scalar a) const;

  // value(a) ≤ slack·value(b), decided on exponents in the rounding modes.
  bool le_slack(Scalar a, Scalar b) const;
  // value(a) ≤ slack·b.
  bool le_slack_int(Scalar a, double b) const;
  // a ≤ slack·value(b).
  bool int_le_slack(double a, Scalar b) const;

 private:
  double log1(double x) const;  // log_{1+δ}(x), snapped

  RoundingContext ctx_;
  double slack_ = 1.0;
};

enum class Sense { kNone, kMin, kMax };

struct TableLayout {
  int key_dim = 0;
  std::vector<char> rounded;  // per key coordinate
  Sense sense = Sense::kNone;
  bool rounded_objective = false;
};

struct Provenance {
  std::int32_t a = -1;  // entry in the first child's table
  std::int32_t b = -1;  // entry in the second child's table
  std::int32_t choice = 0;
};

class DpTable {
 public:
  DpTable() = default;
  DpTable(TableLayout layout, bool instrumented);

  const TableLayout& layout() const { return layout_; }
  int key_dim() const { return layout_.key_dim; }
  int size() const { return static_cast<int>(provenance_.size()); }
  bool instrumented() const { return instrumented_; }

  std::uint64_t code(int entry, int d) const { return codes_[idx(entry, d)]; }
  const std::uint64_t* codes(int entry) const { return codes_.data() + idx(entry, 0); }
  Scalar key(int entry, int d) const;
  void key(int entry, std::vector<Scalar>& out) const;
  const Scalar& objective(int entry) const { return objective_[entry]; }
  const Provenance& provenance(int entry) const { return provenance_[entry]; }

  void clear_storage();

 private:
  friend class TableBuilder;
  std::size_t idx(int entry, int d) const {
    return static_cast<std::size_t>(entry) * layout_.key_dim + d;
  }

  TableLayout layout_;
  bool instrumented_ = false;
  std::vector<std::uint64_t> codes_;
  std::vector<double> shadows_;
  std::vector<std::uint16_t> depths_;
  std::vector<Scalar> objective_;
  std::vector<Provenance> provenance_;
};

// Deduplicating table construction. The first entry sharing a key keeps its
// slot; a later one replaces it only with a strictly better objective.
class TableBuilder {
 public:
  TableBuilder(const TableLayout& layout, bool instrumented, std::int64_t max_entries);

  void emit(const Scalar* key, Scalar objective, Provenance provenance);
  void emit(const std::vector<Scalar>& key, Scalar objective, Provenance provenance) {
    emit(key.data(), objective, provenance);
  }
  // Emits every entry of `other` in order.
  void absorb(const TableBuilder& other);
  int size() const { return table_.size(); }
  DpTable finish();

 private:
  std::uint64_t hash(const std::uint64_t* codes) const;
  bool same(int entry, const std::uint64_t* codes) const;
  bool better(Scalar a, Scalar b) const;
  void grow();
  void store(int entry, const std::uint64_t* codes, const double* shadows,
             const std::uint16_t* depths);
  void emit_raw(const std::uint64_t* codes, const double* shadows, const std::uint16_t* depths,
                Scalar objective, Provenance provenance);

  DpTable table_;
  std::int64_t max_entries_;
  std::vector<std::int32_t> slots_;
  std::vector<std::uint64_t> scratch_codes_;
  std::vector<double> scratch_shadows_;
  std::vector<std::uint16_t> scratch_depths_;
};

struct TableStats {
  std::int64_t nodes = 0;
  std::int64_t total_entries = 0;
  std::int64_t max_entries = 0;
  // Distinct nonzero codes over all rounded coordinates of all tables.
  std::int64_t distinct_exponents = 0;
  // Worst max{value/shadow, shadow/value} over tracked nonzero values.
  double max_ratio = 1.0;
  // log_{1+δ} of max_ratio.
  double max_abs_error = 0.0;
  int max_depth = 0;
  // Rounded coordinates that are zero with a nonzero shadow or vice versa.
  std::int64_t zero_mismatches = 0;
};

class StatsCollector {
 public:
  explicit StatsCollector(const Arith& arith) : arith_(arith) {}
  void add(const DpTable& table);
  TableStats finish() const;

 private:
  void track(const Scalar& s);

  const Arith& arith_;
  TableStats stats_;
  std::vector<char> seen_small_;
  std::unordered_set<std::uint64_t> seen_large_;
};

// Runs fn(i, builder) for i in [0, count), split into contiguous chunks over
// `threads` workers and merged in chunk order, so the result is identical for
// every thread count.
template <typename Fn>
void produce(int count, int threads, TableBuilder& out, const TableLayout& layout,
             bool instrumented, std::int64_t max_entries, Fn fn);

}  // namespace widthapx

#include "widthapx/scalar_impl.hpp"

#endif  // WIDTHAPX_SCALAR_HPP_
