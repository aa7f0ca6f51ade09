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

// Rounded value domain {0} ∪ {(1+δ)^j : j ≥ 0} and the probabilistic
// rounding-addition operator on it.
//
// Values are stored by exponent only. The real value (1+δ)^j is never kept
// inside tables, so keys compare and hash exactly.

#ifndef WIDTHAPX_ROUNDING_HPP_
#define WIDTHAPX_ROUNDING_HPP_

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace widthapx {

enum class RoundingMode { kRandomized, kDeterministic, kExact };

std::string_view to_string(RoundingMode mode);
// Accepts "randomized", "deterministic", "exact". Throws DomainError.
RoundingMode parse_rounding_mode(std::string_view text);

class ApproxValue {
 public:
  constexpr ApproxValue() = default;

  static constexpr ApproxValue zero() { return ApproxValue(); }
  static constexpr ApproxValue power(std::uint32_t exponent) {
    ApproxValue v;
    v.code_ = static_cast<std::uint64_t>(exponent) + 1;
    return v;
  }
  // Inverse of code(). Code 0 is Zero, code j+1 is Power(j).
  static constexpr ApproxValue from_code(std::uint64_t code) {
    ApproxValue v;
    v.code_ = code;
    return v;
  }

  constexpr bool is_zero() const { return code_ == 0; }
  // Precondition: !is_zero().
  constexpr std::uint32_t exponent() const {
    return static_cast<std::uint32_t>(code_ - 1);
  }
  // Dense order-preserving encoding: Zero < Power(0) < Power(1) < ...
  constexpr std::uint64_t code() const { return code_; }

  friend constexpr auto operator<=>(ApproxValue, ApproxValue) = default;

 private:
  std::uint64_t code_ = 0;
};

std::string to_string(ApproxValue v);

// Rounding parameters for one run. The cap bounds the largest exponent any
// table may hold; results above it are reported as capped (std::nullopt).
class RoundingContext {
 public:
  static constexpr double kDefaultSnapTolerance = 1e-9;

  // cap_value defaults to (1+epsilon)·n².
  RoundingContext(RoundingMode mode, double delta, double epsilon, std::int64_t n,
                  std::uint64_t seed);

  // Throws DomainError unless δ ∈ (0, 1/2) in the rounding modes and ε ∈ (0, 1).
  void require_solver_range() const;

  RoundingContext& set_cap_value(double cap_value);
  RoundingContext& set_snap_tolerance(double tolerance);
  RoundingContext& set_seed(std::uint64_t seed) {
    seed_ = seed;
    return *this;
  }

  RoundingMode mode() const { return mode_; }
  bool exact() const { return mode_ == RoundingMode::kExact; }
  double delta() const { return delta_; }
  double epsilon() const { return epsilon_; }
  std::int64_t n() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  double snap_tolerance() const { return snap_tolerance_; }
  double cap_value() const { return cap_value_; }
  // ln(1+δ).
  double log_base() const { return log_base_; }
  // Largest storable exponent: ⌊log_{1+δ}(cap_value)⌋.
  std::int64_t cap_exponent() const { return cap_exponent_; }
  // ⌈log_{1+δ}(1+ε)⌉: the (1+ε) slack expressed in exponent steps.
  std::int64_t slack_exponent() const { return slack_exponent_; }
  // Multiplicative slack used by drop rules: 1 in exact mode, 1+ε otherwise.
  double slack_factor() const { return exact() ? 1.0 : 1.0 + epsilon_; }

 private:
  void recompute();

  RoundingMode mode_;
  double delta_;
  double epsilon_;
  std::int64_t n_;
  std::uint64_t seed_;
  double snap_tolerance_ = kDefaultSnapTolerance;
  double cap_value_;
  double log_base_ = 0;
  std::int64_t cap_exponent_ = 0;
  std::int64_t slack_exponent_ = 0;
};

// Counter-based uniform stream on (0,1). The k-th draw is a pure function of
// (seed, stream id, k), so results do not depend on evaluation order.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t counter = 0)
      : seed_(seed), stream_(stream_id), counter_(counter) {}

  double next() { return draw(seed_, stream_, counter_++); }
  std::uint64_t counter() const { return counter_; }
  std::uint64_t stream_id() const { return stream_; }

  static double draw(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t counter);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_;
};

// Hashes a tuple of identifiers (node, entry ordinals, choice, ...) into a
// stream id.
std::uint64_t make_stream_id(std::initializer_list<std::uint64_t> parts);

std::uint64_t splitmix64(std::uint64_t x);

// log_{1+δ}(x) with the snap applied: values within snap_tolerance of an
// integer become that integer.
double snapped_log(double x, const RoundingContext& ctx);

// Rounds a log-domain value L to ⌊L + r⌋. Exact integers never move. r is
// drawn from `stream` in randomized mode and fixed at 1/2 in deterministic
// mode. Returns nullopt when the result exceeds the cap.
std::optional<ApproxValue> round_log(double log_value, const RoundingContext& ctx,
                                     RandomStream& stream);

// x1 ⊕ x2 on nonnegative reals. Throws DomainError on negative input, on a
// positive sum below 1 (its exponent would be negative) and in exact mode.
std::optional<ApproxValue> oplus(double x1, double x2, const RoundingContext& ctx,
                                 RandomStream& stream);

// x1 ⊕ x2 on rounded values, evaluated in the log domain. a ⊕ Zero = a.
std::optional<ApproxValue> oplus(ApproxValue a, ApproxValue b, const RoundingContext& ctx,
                                 RandomStream& stream);

// Same distribution as oplus(x, 0).
std::optional<ApproxValue> round_single(std::uint64_t x, const RoundingContext& ctx,
                                        RandomStream& stream);

double value_of(ApproxValue v, const RoundingContext& ctx);
double value_of(ApproxValue v, double delta);

// Fractional part of log_{1+δ}(x1 + x2): the probability of rounding up.
double up_probability(double x1, double x2, const RoundingContext& ctx);

}  // namespace widthapx

#endif  // WIDTHAPX_ROUNDING_HPP_
