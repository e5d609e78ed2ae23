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

#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace samplerdp {

double log_expm1(double x) {
  if (std::isnan(x) || x < 0) {
    throw std::invalid_argument("log_expm1: argument must be >= 0");
  }
  if (x == 0) return -kInf;
  if (x == kInf) return kInf;
  // Below the crossover expm1 is exact; above, e^x dominates the -1.
  if (x < 0.5) return std::log(std::expm1(x));
  return x + std::log1p(-std::exp(-x));
}

double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  if (a == kInf || b == kInf) return kInf;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

double log_sub_exp(double a, double b) {
  if (std::isnan(a) || std::isnan(b) || a < b) {
    throw std::invalid_argument("log_sub_exp: requires a >= b");
  }
  if (a == b) return -kInf;
  if (b == -kInf) return a;
  return a + std::log1p(-std::exp(b - a));
}

double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) {
    throw std::invalid_argument("log_sum_exp: empty input");
  }
  std::size_t imax = 0;
  double m = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] > m) {
      m = xs[i];
      imax = i;
    }
  }
  if (m == -kInf) return -kInf;
  if (m == kInf) return kInf;
  // The max term contributes exactly 1; folding it through log1p keeps full
  // precision when a single term dominates.
  double rest = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i == imax) continue;
    rest += std::exp(xs[i] - m);
  }
  return m + std::log1p(rest);
}

double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) {
    throw std::invalid_argument("log_binomial: requires 0 <= k <= n");
  }
  if (k == 0 || k == n) return 0.0;
  if (k == 1 || k == n - 1) return std::log(static_cast<double>(n));
  if (n <= 64) {
    // Coefficients up to C(64, 32) fit the 64-bit long double mantissa, so
    // the multiplicative recurrence is exact; the lgamma route would leak
    // ~1e-14 relative error into the alternating sums built on top.
    const std::int64_t kk = std::min(k, n - k);
    long double c = 1;
    for (std::int64_t i = 1; i <= kk; ++i) {
      c = c * static_cast<long double>(n - kk + i) / static_cast<long double>(i);
    }
    return static_cast<double>(logl(c));
  }
  const double dn = static_cast<double>(n);
  const double dk = static_cast<double>(k);
  return std::lgamma(dn + 1) - std::lgamma(dk + 1) - std::lgamma(dn - dk + 1);
}

SignedLogReal SignedLogReal::encode(double x) {
  if (std::isnan(x)) {
    throw std::invalid_argument("SignedLogReal: NaN is not representable");
  }
  if (x == 0) return {0, -kInf};
  return {x > 0 ? 1 : -1, std::log(std::abs(x))};
}

SignedLogReal SignedLogReal::from_log(int sign, double logmag) {
  if (sign == 0 || logmag == -kInf) return {0, -kInf};
  return {sign > 0 ? 1 : -1, logmag};
}

double SignedLogReal::decode() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(logmag);
}

SignedLogReal operator+(const SignedLogReal& a, const SignedLogReal& b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  if (a.sign == b.sign) return {a.sign, log_add_exp(a.logmag, b.logmag)};
  if (a.logmag == b.logmag) return {0, -kInf};
  const SignedLogReal& big = a.logmag > b.logmag ? a : b;
  const SignedLogReal& small = a.logmag > b.logmag ? b : a;
  return {big.sign, log_sub_exp(big.logmag, small.logmag)};
}

SignedLogReal operator-(const SignedLogReal& a, const SignedLogReal& b) {
  return a + (-b);
}

SignedLogReal operator*(const SignedLogReal& a, const SignedLogReal& b) {
  if (a.sign == 0 || b.sign == 0) return {0, -kInf};
  return {a.sign * b.sign, a.logmag + b.logmag};
}

namespace {

// log-sum-exp accumulated in long double; the extra mantissa bits survive
// the subtraction of the positive and negative halves below.
long double log_sum_exp_ld(const std::vector<double>& xs) {
  if (xs.empty()) return -kInf;
  const double m = *std::max_element(xs.begin(), xs.end());
  if (m == -kInf || m == kInf) return m;
  long double rest = 0;
  bool skipped_max = false;
  for (double x : xs) {
    if (!skipped_max && x == m) {
      skipped_max = true;
      continue;
    }
    rest += expl(static_cast<long double>(x) - m);
  }
  return static_cast<long double>(m) + log1pl(rest);
}

// Alternating-binomial sum at one order from cached f values.
DiffResult difference_from_values(std::span<const SignedLogReal> fv,
                                  std::int64_t order) {
  std::vector<double> pos, neg;
  pos.reserve(order + 1);
  neg.reserve(order + 1);
  double log_max = -kInf;
  for (std::int64_t i = 0; i <= order; ++i) {
    const SignedLogReal& fi = fv[static_cast<std::size_t>(i)];
    if (fi.sign == 0) continue;
    const double t = log_binomial(order, i) + fi.logmag;
    log_max = std::max(log_max, t);
    const int term_sign = ((order - i) % 2 == 0) ? fi.sign : -fi.sign;
    (term_sign > 0 ? pos : neg).push_back(t);
  }
  const long double lp = log_sum_exp_ld(pos);
  const long double ln = log_sum_exp_ld(neg);

  SignedLogReal value;
  if (lp > ln) {
    const long double mag =
        (ln == -kInf) ? lp : lp + log1pl(-expl(ln - lp));
    value = {1, static_cast<double>(mag)};
  } else if (ln > lp) {
    const long double mag =
        (lp == -kInf) ? ln : ln + log1pl(-expl(lp - ln));
    value = {-1, static_cast<double>(mag)};
  } else {
    value = {0, -kInf};
  }

  DiffResult out;
  out.log_max_term = log_max;
  const double floor_log = log_max + std::log(kCancellationFloor);
  if (log_max > -kInf &&
      (value.sign == 0 || value.logmag < floor_log)) {
    out.value = {0, -kInf};
    out.cancellation_limited = true;
  } else {
    out.value = value;
  }
  return out;
}

}  // namespace

DiffResult forward_difference(
    const std::function<SignedLogReal(std::int64_t)>& f, std::int64_t order) {
  if (order < 1) {
    throw std::invalid_argument("forward_difference: order must be >= 1");
  }
  std::vector<SignedLogReal> fv(static_cast<std::size_t>(order) + 1);
  for (std::int64_t i = 0; i <= order; ++i) {
    fv[static_cast<std::size_t>(i)] = f(i);
  }
  return difference_from_values(fv, order);
}

std::vector<DiffResult> forward_difference_table(
    const std::function<SignedLogReal(std::int64_t)>& f,
    std::int64_t max_order) {
  if (max_order < 1) {
    throw std::invalid_argument("forward_difference_table: max_order >= 1");
  }
  std::vector<SignedLogReal> fv(static_cast<std::size_t>(max_order) + 1);
  for (std::int64_t i = 0; i <= max_order; ++i) {
    fv[static_cast<std::size_t>(i)] = f(i);
  }
  std::vector<DiffResult> table;
  table.reserve(max_order);
  for (std::int64_t k = 1; k <= max_order; ++k) {
    table.push_back(difference_from_values(
        std::span<const SignedLogReal>(fv.data(), static_cast<std::size_t>(k) + 1), k));
  }
  return table;
}

}  // namespace samplerdp
