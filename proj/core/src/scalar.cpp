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

#include "widthapx/scalar.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "widthapx/errors.hpp"

namespace widthapx {

namespace {

std::uint64_t checked_sum(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    throw LimitError("exact DP arithmetic overflowed 64 bits");
  }
  return a + b;
}

std::uint16_t bump(std::uint16_t d) {
  return d == std::numeric_limits<std::uint16_t>::max() ? d : static_cast<std::uint16_t>(d + 1);
}

constexpr std::size_t kSmallCodes = std::size_t{1} << 22;

}  // namespace

Arith::Arith(const RoundingContext& ctx) : ctx_(ctx), slack_(ctx.slack_factor()) {}

Scalar Arith::one() const { return {1, 1.0, 0}; }

std::optional<Scalar> Arith::enter(std::uint64_t x, RandomStream& stream) const {
  if (x == 0) return zero();
  if (exact()) return Scalar{x, static_cast<double>(x), 1};
  auto r = round_single(x, ctx_, stream);
  if (!r) return std::nullopt;
  return Scalar{r->code(), static_cast<double>(x), 1};
}

std::optional<Scalar> Arith::add(Scalar a, Scalar b, RandomStream& stream) const {
  if (a.code == 0) return b;
  if (b.code == 0) return a;
  const double shadow = a.shadow + b.shadow;
  const std::uint16_t depth = bump(std::max(a.depth, b.depth));
  if (exact()) return Scalar{checked_sum(a.code, b.code), shadow, depth};
  auto r = oplus(ApproxValue::from_code(a.code), ApproxValue::from_code(b.code), ctx_, stream);
  if (!r) return std::nullopt;
  return Scalar{r->code(), shadow, depth};
}

std::optional<Scalar> Arith::add_int(Scalar a, std::uint64_t m, RandomStream& stream) const {
  if (m == 0) return a;
  if (a.code == 0) return enter(m, stream);
  const double shadow = a.shadow + static_cast<double>(m);
  const std::uint16_t depth = bump(a.depth);
  if (exact()) return Scalar{checked_sum(a.code, m), shadow, depth};
  auto r = oplus(value(a), static_cast<double>(m), ctx_, stream);
  if (!r) return std::nullopt;
  return Scalar{r->code(), shadow, depth};
}

std::optional<Scalar> Arith::add_real(Scalar a, double x, double x_shadow, std::uint16_t x_depth,
                                      RandomStream& stream) const {
  if (x == 0) return a;
  const double shadow = a.shadow + x_shadow;
  const std::uint16_t depth = bump(std::max(a.depth, x_depth));
  if (exact()) {
    const double r = std::round(x);
    if (std::abs(r - x) > 1e-6 || r < 0) throw InternalError("exact DP produced a fractional sum");
    return Scalar{checked_sum(a.code, static_cast<std::uint64_t>(r)), shadow, depth};
  }
  auto r = oplus(value(a), x, ctx_, stream);
  if (!r) return std::nullopt;
  return Scalar{r->code(), shadow, depth};
}

double Arith::value(Scalar a) const {
  if (exact()) return static_cast<double>(a.code);
  return value_of(ApproxValue::from_code(a.code), ctx_);
}

double Arith::log_value(Scalar a) const {
  if (a.code == 0) return -std::numeric_limits<double>::infinity();
  if (exact()) return std::log(static_cast<double>(a.code));
  return static_cast<double>(a.code - 1) * ctx_.log_base();
}

double Arith::log1(double x) const { return snapped_log(x, ctx_); }

bool Arith::le_slack(Scalar a, Scalar b) const {
  if (exact()) return a.code <= b.code;
  if (a.code == 0) return true;
  if (b.code == 0) return false;
  return static_cast<std::int64_t>(a.code - 1) <=
         static_cast<std::int64_t>(b.code - 1) + ctx_.slack_exponent();
}

bool Arith::le_slack_int(Scalar a, double b) const {
  if (exact()) return static_cast<double>(a.code) <= b;
  if (a.code == 0) return true;
  if (b < 1) return false;
  return static_cast<double>(a.code - 1) <=
         std::floor(log1(b)) + static_cast<double>(ctx_.slack_exponent());
}

bool Arith::int_le_slack(double a, Scalar b) const {
  if (exact()) return a <= static_cast<double>(b.code);
  if (a <= 0) return true;
  if (b.code == 0) return false;
  return std::ceil(log1(a)) <=
         static_cast<double>(b.code - 1) + static_cast<double>(ctx_.slack_exponent());
}

DpTable::DpTable(TableLayout layout, bool instrumented)
    : layout_(std::move(layout)), instrumented_(instrumented) {
  layout_.rounded.resize(layout_.key_dim, 0);
}

Scalar DpTable::key(int entry, int d) const {
  const std::size_t i = idx(entry, d);
  if (!instrumented_) return {codes_[i], static_cast<double>(codes_[i]), 0};
  return {codes_[i], shadows_[i], depths_[i]};
}

void DpTable::key(int entry, std::vector<Scalar>& out) const {
  out.resize(layout_.key_dim);
  for (int d = 0; d < layout_.key_dim; ++d) out[d] = key(entry, d);
}

void DpTable::clear_storage() {
  codes_ = {};
  shadows_ = {};
  depths_ = {};
}

TableBuilder::TableBuilder(const TableLayout& layout, bool instrumented, std::int64_t max_entries)
    : table_(layout, instrumented), max_entries_(max_entries), slots_(64, -1) {
  scratch_codes_.resize(layout.key_dim);
  scratch_shadows_.resize(layout.key_dim);
  scratch_depths_.resize(layout.key_dim);
}

std::uint64_t TableBuilder::hash(const std::uint64_t* codes) const {
  std::uint64_t h = 0x8f1bbcdcca62c1d6ULL;
  for (int d = 0; d < table_.key_dim(); ++d) h = splitmix64(h ^ codes[d]);
  return h;
}

bool TableBuilder::same(int entry, const std::uint64_t* codes) const {
  const std::uint64_t* mine = table_.codes(entry);
  for (int d = 0; d < table_.key_dim(); ++d) {
    if (mine[d] != codes[d]) return false;
  }
  return true;
}

bool TableBuilder::better(Scalar a, Scalar b) const {
  switch (table_.layout().sense) {
    case Sense::kMin:
      return a.code < b.code;
    case Sense::kMax:
      return a.code > b.code;
    case Sense::kNone:
      return false;
  }
  return false;
}

void TableBuilder::grow() {
  std::vector<std::int32_t> slots(slots_.size() * 2, -1);
  const std::size_t mask = slots.size() - 1;
  for (int e = 0; e < table_.size(); ++e) {
    std::size_t i = hash(table_.codes(e)) & mask;
    while (slots[i] >= 0) i = (i + 1) & mask;
    slots[i] = e;
  }
  slots_ = std::move(slots);
}

void TableBuilder::store(int entry, const std::uint64_t* codes, const double* shadows,
                         const std::uint16_t* depths) {
  const int dim = table_.key_dim();
  const std::size_t base = static_cast<std::size_t>(entry) * dim;
  if (base == table_.codes_.size()) {
    table_.codes_.insert(table_.codes_.end(), codes, codes + dim);
    if (table_.instrumented_) {
      table_.shadows_.insert(table_.shadows_.end(), shadows, shadows + dim);
      table_.depths_.insert(table_.depths_.end(), depths, depths + dim);
    }
    return;
  }
  std::copy(codes, codes + dim, table_.codes_.begin() + static_cast<long>(base));
  if (table_.instrumented_) {
    std::copy(shadows, shadows + dim, table_.shadows_.begin() + static_cast<long>(base));
    std::copy(depths, depths + dim, table_.depths_.begin() + static_cast<long>(base));
  }
}

void TableBuilder::emit_raw(const std::uint64_t* codes, const double* shadows,
                            const std::uint16_t* depths, Scalar objective,
                            Provenance provenance) {
  const std::size_t mask = slots_.size() - 1;
  std::size_t i = hash(codes) & mask;
  while (slots_[i] >= 0) {
    const int e = slots_[i];
    if (same(e, codes)) {
      if (better(objective, table_.objective_[e])) {
        store(e, codes, shadows, depths);
        table_.objective_[e] = objective;
        table_.provenance_[e] = provenance;
      }
      return;
    }
    i = (i + 1) & mask;
  }
  const int e = table_.size();
  if (e >= max_entries_) {
    throw LimitError("DP table exceeds " + std::to_string(max_entries_) + " entries");
  }
  slots_[i] = e;
  store(e, codes, shadows, depths);
  table_.objective_.push_back(objective);
  table_.provenance_.push_back(provenance);
  if (static_cast<std::size_t>(table_.size()) * 2 > slots_.size()) grow();
}

void TableBuilder::emit(const Scalar* key, Scalar objective, Provenance provenance) {
  for (int d = 0; d < table_.key_dim(); ++d) {
    scratch_codes_[d] = key[d].code;
    scratch_shadows_[d] = key[d].shadow;
    scratch_depths_[d] = key[d].depth;
  }
  emit_raw(scratch_codes_.data(), scratch_shadows_.data(), scratch_depths_.data(), objective,
           provenance);
}

void TableBuilder::absorb(const TableBuilder& other) {
  const DpTable& t = other.table_;
  const bool inst = t.instrumented_;
  for (int e = 0; e < t.size(); ++e) {
    const std::size_t base = t.idx(e, 0);
    emit_raw(t.codes_.data() + base, inst ? t.shadows_.data() + base : nullptr,
             inst ? t.depths_.data() + base : nullptr, t.objective_[e], t.provenance_[e]);
  }
}

DpTable TableBuilder::finish() {
  slots_ = {};
  return std::move(table_);
}

void StatsCollector::track(const Scalar& s) {
  if (s.code != 0) {
    if (s.code < kSmallCodes) {
      if (seen_small_.size() <= s.code) seen_small_.resize(std::max<std::size_t>(s.code + 1, seen_small_.size() * 2), 0);
      if (!seen_small_[s.code]) {
        seen_small_[s.code] = 1;
        ++stats_.distinct_exponents;
      }
    } else if (seen_large_.insert(s.code).second) {
      ++stats_.distinct_exponents;
    }
  }
  if (arith_.exact()) return;
  stats_.max_depth = std::max<int>(stats_.max_depth, s.depth);
  if ((s.code == 0) != (s.shadow == 0)) {
    ++stats_.zero_mismatches;
    return;
  }
  if (s.code == 0) return;
  const double lambda =
      std::abs(arith_.log_value(s) - std::log(s.shadow)) / arith_.ctx().log_base();
  if (lambda > stats_.max_abs_error) {
    stats_.max_abs_error = lambda;
    stats_.max_ratio = std::exp(lambda * arith_.ctx().log_base());
  }
}

void StatsCollector::add(const DpTable& table) {
  ++stats_.nodes;
  stats_.total_entries += table.size();
  stats_.max_entries = std::max<std::int64_t>(stats_.max_entries, table.size());
  const TableLayout& layout = table.layout();
  for (int e = 0; e < table.size(); ++e) {
    for (int d = 0; d < layout.key_dim; ++d) {
      if (layout.rounded[d]) track(table.key(e, d));
    }
    if (layout.rounded_objective) track(table.objective(e));
  }
}

TableStats StatsCollector::finish() const { return stats_; }

}  // namespace widthapx
