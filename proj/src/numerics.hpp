// Copyright 2026 The samplerdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace samplerdp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative magnitude below which an alternating sum is considered fully
// cancelled: the double-precision result carries no trustworthy digits.
inline constexpr double kCancellationFloor = 1e-12;

// log(e^x - 1) for x >= 0; -inf at x == 0, +inf at x == +inf.
double log_expm1(double x);

// log(e^a + e^b) on extended reals.
double log_add_exp(double a, double b);

// log(e^a - e^b); requires a >= b. Returns -inf when a == b.
double log_sub_exp(double a, double b);

// max(xs) + log(sum_i exp(xs[i] - max(xs))). Shift-invariant; returns -inf
// for all-(-inf) input, +inf if any element is +inf. xs must be nonempty.
double log_sum_exp(std::span<const double> xs);

// log of the binomial coefficient C(n, k); requires 0 <= k <= n.
// Evaluated through log-gamma, exact to machine precision for n <= 1e6.
double log_binomial(std::int64_t n, std::int64_t k);

// A real number in polar form: sign and log of the absolute value. Keeps
// products and alternating sums of astronomically scaled terms inside
// double range.
struct SignedLogReal {
  int sign = 0;           // -1, 0, +1
  double logmag = -kInf;  // log(|x|); -inf iff sign == 0

  static SignedLogReal encode(double x);
  static SignedLogReal from_log(int sign, double logmag);

  // May round to 0 or +-inf when the value leaves double range.
  double decode() const;

  bool is_zero() const { return sign == 0; }
  SignedLogReal operator-() const { return {-sign, sign == 0 ? -kInf : logmag}; }

  friend SignedLogReal operator+(const SignedLogReal& a, const SignedLogReal& b);
  friend SignedLogReal operator-(const SignedLogReal& a, const SignedLogReal& b);
  friend SignedLogReal operator*(const SignedLogReal& a, const SignedLogReal& b);
};

// Result of a finite-difference evaluation. `cancellation_limited` marks
// sums whose magnitude fell below kCancellationFloor of the largest term;
// the value is then reported as exact zero and must not be trusted.
struct DiffResult {
  SignedLogReal value;
  bool cancellation_limited = false;
  double log_max_term = -kInf;
};

// order-th forward difference of f at 0:
//   sum_{i=0}^{order} (-1)^(order-i) C(order, i) f(i),
// assembled as one positive and one negative log-sum-exp followed by a
// single signed subtraction. order >= 1; f must be evaluable on 0..order.
DiffResult forward_difference(
    const std::function<SignedLogReal(std::int64_t)>& f, std::int64_t order);

// Differences of all orders 1..max_order from max_order+1 evaluations of f.
std::vector<DiffResult> forward_difference_table(
    const std::function<SignedLogReal(std::int64_t)>& f, std::int64_t max_order);

}  // namespace samplerdp
