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

#include "widthapx/rounding.hpp"

#include <algorithm>
#include <cmath>

#include "widthapx/errors.hpp"

namespace widthapx {

namespace {
constexpr std::int64_t kMaxExponent = std::numeric_limits<std::uint32_t>::max() - 1;
}  // namespace

std::string_view to_string(RoundingMode mode) {
  switch (mode) {
    case RoundingMode::kRandomized:
      return "randomized";
    case RoundingMode::kDeterministic:
      return "deterministic";
    case RoundingMode::kExact:
      return "exact";
  }
  return "?";
}

RoundingMode parse_rounding_mode(std::string_view text) {
  if (text == "randomized") return RoundingMode::kRandomized;
  if (text == "deterministic") return RoundingMode::kDeterministic;
  if (text == "exact") return RoundingMode::kExact;
  throw DomainError("unknown rounding mode '" + std::string(text) + "'");
}

std::string to_string(ApproxValue v) {
  return v.is_zero() ? std::string("0") : "p" + std::to_string(v.exponent());
}

RoundingContext::RoundingContext(RoundingMode mode, double delta, double epsilon,
                                 std::int64_t n, std::uint64_t seed)
    : mode_(mode), delta_(delta), epsilon_(epsilon), n_(n), seed_(seed) {
  if (mode_ != RoundingMode::kExact && !(delta_ > 0.0 && std::isfinite(delta_))) {
    throw DomainError("delta must be positive");
  }
  if (!(epsilon_ > 0.0)) throw DomainError("epsilon must be positive");
  if (n_ < 1) throw DomainError("instance size must be at least 1");
  const double nn = static_cast<double>(n_);
  cap_value_ = (1.0 + epsilon_) * nn * nn;
  recompute();
}

void RoundingContext::require_solver_range() const {
  if (mode_ != RoundingMode::kExact && !(delta_ > 0.0 && delta_ < 0.5)) {
    throw DomainError("delta must lie in (0, 1/2)");
  }
  if (!(epsilon_ > 0.0 && epsilon_ < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
}

RoundingContext& RoundingContext::set_cap_value(double cap_value) {
  if (!(cap_value >= 1.0)) throw DomainError("cap value must be at least 1");
  cap_value_ = cap_value;
  recompute();
  return *this;
}

RoundingContext& RoundingContext::set_snap_tolerance(double tolerance) {
  if (!(tolerance >= 0.0 && tolerance < 0.5)) throw DomainError("bad snap tolerance");
  snap_tolerance_ = tolerance;
  recompute();
  return *this;
}

void RoundingContext::recompute() {
  if (mode_ == RoundingMode::kExact) {
    log_base_ = delta_ > 0 ? std::log1p(delta_) : 0.0;
    cap_exponent_ = kMaxExponent;
    slack_exponent_ = 0;
    return;
  }
  log_base_ = std::log1p(delta_);
  if (std::isinf(cap_value_)) {
    cap_exponent_ = kMaxExponent;
  } else {
    const double l = std::log(cap_value_) / log_base_;
    const double snapped =
        std::abs(l - std::round(l)) < snap_tolerance_ ? std::round(l) : l;
    cap_exponent_ = std::min<std::int64_t>(kMaxExponent,
                                           static_cast<std::int64_t>(std::floor(snapped)));
  }
  const double s = std::log1p(epsilon_) / log_base_;
  slack_exponent_ = static_cast<std::int64_t>(
      std::ceil(std::abs(s - std::round(s)) < snap_tolerance_ ? std::round(s) : s));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t make_stream_id(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x51ed270b27e3f2a1ULL;
  for (std::uint64_t p : parts) h = splitmix64(h ^ splitmix64(p));
  return h;
}

double RandomStream::draw(std::uint64_t seed, std::uint64_t stream_id,
                          std::uint64_t counter) {
  const std::uint64_t key = splitmix64(seed ^ splitmix64(stream_id ^ 0xa0761d6478bd642fULL));
  const std::uint64_t bits = splitmix64(key + counter * 0xe7037ed1a0b428dbULL);
  // 53 random bits mapped to the open interval (0,1).
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double snapped_log(double x, const RoundingContext& ctx) {
  const double l = std::log(x) / ctx.log_base();
  const double nearest = std::round(l);
  return std::abs(l - nearest) < ctx.snap_tolerance() ? nearest : l;
}

std::optional<ApproxValue> round_log(double log_value, const RoundingContext& ctx,
                                     RandomStream& stream) {
  if (ctx.exact()) throw DomainError("exact mode performs no rounding");
  const double nearest = std::round(log_value);
  const double l =
      std::abs(log_value - nearest) < ctx.snap_tolerance() ? nearest : log_value;
  double exponent;
  if (l == std::floor(l)) {
    exponent = l;  // ⌊L + r⌋ = L for every r ∈ (0,1).
  } else {
    const double r = ctx.mode() == RoundingMode::kDeterministic ? 0.5 : stream.next();
    exponent = std::floor(l + r);
  }
  if (exponent < 0) throw DomainError("rounded value below 1 is not representable");
  if (exponent > static_cast<double>(ctx.cap_exponent())) return std::nullopt;
  return ApproxValue::power(static_cast<std::uint32_t>(exponent));
}

std::optional<ApproxValue> oplus(double x1, double x2, const RoundingContext& ctx,
                                 RandomStream& stream) {
  if (x1 < 0 || x2 < 0 || std::isnan(x1) || std::isnan(x2)) {
    throw DomainError("oplus operands must be nonnegative");
  }
  if (ctx.exact()) throw DomainError("exact mode performs no rounding");
  const double sum = x1 + x2;
  if (sum == 0) return ApproxValue::zero();
  if (sum < 1) throw DomainError("positive sums below 1 are not representable");
  return round_log(std::log(sum) / ctx.log_base(), ctx, stream);
}

std::optional<ApproxValue> oplus(ApproxValue a, ApproxValue b, const RoundingContext& ctx,
                                 RandomStream& stream) {
  if (ctx.exact()) throw DomainError("exact mode performs no rounding");
  if (a.is_zero() || b.is_zero()) {
    const ApproxValue v = a.is_zero() ? b : a;
    if (!v.is_zero() && v.exponent() > ctx.cap_exponent()) return std::nullopt;
    return v;
  }
  const double hi = std::max(a.exponent(), b.exponent());
  const double lo = std::min(a.exponent(), b.exponent());
  // log_{1+δ}((1+δ)^hi + (1+δ)^lo) without forming either power.
  const double l = hi + std::log1p(std::exp((lo - hi) * ctx.log_base())) / ctx.log_base();
  return round_log(l, ctx, stream);
}

std::optional<ApproxValue> round_single(std::uint64_t x, const RoundingContext& ctx,
                                        RandomStream& stream) {
  return oplus(static_cast<double>(x), 0.0, ctx, stream);
}

double value_of(ApproxValue v, double delta) {
  if (v.is_zero()) return 0.0;
  return std::exp(static_cast<double>(v.exponent()) * std::log1p(delta));
}

double value_of(ApproxValue v, const RoundingContext& ctx) {
  if (v.is_zero()) return 0.0;
  return std::exp(static_cast<double>(v.exponent()) * ctx.log_base());
}

double up_probability(double x1, double x2, const RoundingContext& ctx) {
  if (x1 < 0 || x2 < 0) throw DomainError("operands must be nonnegative");
  const double sum = x1 + x2;
  if (!(sum > 0)) throw DomainError("up probability needs a positive sum");
  const double l = snapped_log(sum, ctx);
  return l - std::floor(l);
}

}  // namespace widthapx
