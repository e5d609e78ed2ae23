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

#include "amplification.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace samplerdp {

namespace {

constexpr double kLog2 = 0.6931471805599453;
constexpr double kLog4 = 1.3862943611198906;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// log of the coefficient min{2, (e^eps_inf - 1)^j}. The branch constant 2 is
// selected analytically when eps_inf is infinite.
double log_min2_pow(double eps_inf, std::int64_t j) {
  if (eps_inf == kInf) return kLog2;
  return std::min(kLog2, static_cast<double>(j) * log_expm1(eps_inf));
}

// log of the order-2 coefficient
//   min{ 4(e^eps(2) - 1), e^eps(2) * min{2, (e^eps_inf - 1)^2} }.
double log_order2_coef(const RdpCurve& base) {
  const double eps2 = base(2);
  const double a = kLog4 + log_expm1(eps2);
  const double b = eps2 + log_min2_pow(base.eps_inf(), 2);
  return std::min(a, b);
}

// log of the j-th summand of the general bound, j in {0} U [2, alpha].
double general_term_log(const RdpCurve& base, double log_gamma,
                        double log_coef2, std::int64_t alpha, std::int64_t j) {
  if (j == 0) return 0.0;
  const double base_part = log_binomial(alpha, j) + j * log_gamma;
  if (j == 2) return base_part + log_coef2;
  return base_part + (j - 1) * base(static_cast<double>(j)) +
         log_min2_pow(base.eps_inf(), j);
}

// log of the j-th summand of the lower-bound sum, j in {0} U [1, alpha],
// with t = gamma / (1 - gamma).
double lower_term_log(const RdpCurve& base, double log_t, std::int64_t alpha,
                      std::int64_t j) {
  if (j == 0) return 0.0;
  if (j == 1) return std::log(static_cast<double>(alpha)) + log_t;
  return log_binomial(alpha, j) + j * log_t +
         (j - 1) * base(static_cast<double>(j));
}

// Scans all j <= 128 plus a geometric grid above, then hill-climbs around
// every grid-local maximum. The summand sequence is piecewise unimodal (a
// concave log-binomial plus a convex tail), so the refined maximum is the
// global one.
template <typename TermLog>
double max_term_log(const TermLog& term, std::int64_t j_lo, std::int64_t alpha) {
  std::vector<std::int64_t> grid;
  const std::int64_t dense_hi = std::min<std::int64_t>(alpha, 128);
  for (std::int64_t j = j_lo; j <= dense_hi; ++j) grid.push_back(j);
  if (alpha > dense_hi) {
    const double ratio =
        std::pow(static_cast<double>(alpha) / dense_hi, 1.0 / 384.0);
    double x = static_cast<double>(dense_hi);
    while (grid.back() < alpha) {
      x *= ratio;
      const std::int64_t j =
          std::min<std::int64_t>(alpha, static_cast<std::int64_t>(std::llround(x)));
      if (j > grid.back()) grid.push_back(j);
    }
  }

  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = term(grid[i]);

  double best = -kInf;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    best = std::max(best, vals[i]);
    const bool local_max =
        (i == 0 || vals[i] >= vals[i - 1]) &&
        (i + 1 == grid.size() || vals[i] >= vals[i + 1]);
    if (!local_max) continue;
    // Hill-climb inside the bracket formed by the neighbouring grid points.
    std::int64_t lo = (i == 0) ? grid[i] : grid[i - 1];
    std::int64_t hi = (i + 1 == grid.size()) ? grid[i] : grid[i + 1];
    while (hi - lo > 2) {
      const std::int64_t m1 = lo + (hi - lo) / 3;
      const std::int64_t m2 = hi - (hi - lo) / 3;
      if (term(m1) < term(m2)) {
        lo = m1 + 1;
      } else {
        hi = m2 - 1;
      }
    }
    for (std::int64_t j = lo; j <= hi; ++j) best = std::max(best, term(j));
  }
  return best;
}

void check_amplify_args(double gamma, std::int64_t alpha, bool open_gamma) {
  require(gamma > 0 && (open_gamma ? gamma < 1 : gamma <= 1),
          "amplify: gamma out of range");
  require(alpha >= 2, "amplify: alpha must be an integer >= 2");
}

}  // namespace

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::kGeneral: return "general";
    case BoundKind::kTight: return "tight";
    case BoundKind::kLower: return "lower";
    case BoundKind::kPureDpForm: return "puredp_form";
    case BoundKind::kAsymptoticBad: return "asymptotic_bad";
    case BoundKind::kAsymptoticGood: return "asymptotic_good";
  }
  return "unknown";
}

std::optional<BoundKind> bound_kind_from_string(std::string_view name) {
  if (name == "general") return BoundKind::kGeneral;
  if (name == "tight") return BoundKind::kTight;
  if (name == "lower") return BoundKind::kLower;
  if (name == "puredp_form") return BoundKind::kPureDpForm;
  if (name == "asymptotic_bad") return BoundKind::kAsymptoticBad;
  if (name == "asymptotic_good") return BoundKind::kAsymptoticGood;
  return std::nullopt;
}

double amplify_general(const RdpCurve& base, double gamma, std::int64_t alpha) {
  check_amplify_args(gamma, alpha, /*open_gamma=*/false);
  const double log_gamma = std::log(gamma);
  const double coef2 = log_order2_coef(base);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(alpha));
  terms.push_back(0.0);
  for (std::int64_t j = 2; j <= alpha; ++j) {
    terms.push_back(general_term_log(base, log_gamma, coef2, alpha, j));
  }
  return log_sum_exp(terms) / static_cast<double>(alpha - 1);
}

double amplify_tight(const RdpCurve& base, double gamma, std::int64_t alpha) {
  check_amplify_args(gamma, alpha, /*open_gamma=*/false);
  require(base.is_tight() && base.is_self_consistent(),
          "amplify_tight: requires a tight, self-consistent base curve");

  // B(eps, l) = Delta^(l)[e^((.-1) eps(.))](0) for the even orders needed.
  auto mgf = [&base](std::int64_t i) -> SignedLogReal {
    if (i <= 1) return SignedLogReal{1, 0.0};
    return SignedLogReal{1, (i - 1) * base(static_cast<double>(i))};
  };
  const std::int64_t max_even = 2 * ((alpha + 1) / 2);
  std::map<std::int64_t, double> log_b;  // usable entries only
  for (std::int64_t l = 2; l <= max_even; l += 2) {
    const DiffResult d = forward_difference(mgf, l);
    if (!d.cancellation_limited && d.value.sign > 0) {
      log_b[l] = d.value.logmag;
    }
  }

  const double log_gamma = std::log(gamma);
  const double coef2 = log_order2_coef(base);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(alpha));
  terms.push_back(0.0);
  terms.push_back(general_term_log(base, log_gamma, coef2, alpha, 2));
  for (std::int64_t j = 3; j <= alpha; ++j) {
    const auto lo = log_b.find(2 * (j / 2));
    const auto hi = log_b.find(2 * ((j + 1) / 2));
    if (lo != log_b.end() && hi != log_b.end()) {
      terms.push_back(kLog4 + log_binomial(alpha, j) + j * log_gamma +
                      0.5 * (lo->second + hi->second));
    } else {
      terms.push_back(general_term_log(base, log_gamma, coef2, alpha, j));
    }
  }
  return log_sum_exp(terms) / static_cast<double>(alpha - 1);
}

double amplify_lower(const RdpCurve& base, double gamma, std::int64_t alpha) {
  require(base.is_tight(), "amplify_lower: requires a tight base curve");
  require(gamma > 0 && gamma < 1, "amplify_lower: gamma must lie in (0, 1)");
  require(alpha >= 1, "amplify_lower: alpha must be an integer >= 1");
  if (alpha == 1) return 0.0;

  const double log_t = std::log(gamma) - std::log1p(-gamma);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(alpha) + 1);
  for (std::int64_t j = 0; j <= alpha; ++j) {
    terms.push_back(lower_term_log(base, log_t, alpha, j));
  }
  const double value =
      static_cast<double>(alpha) / (alpha - 1) * std::log1p(-gamma) +
      log_sum_exp(terms) / static_cast<double>(alpha - 1);
  return std::max(0.0, value);
}

double amplify_puredp_form(const RdpCurve& base, double gamma, double alpha) {
  require(base.eps_inf() < kInf,
          "amplify_puredp_form: base must have finite eps(inf)");
  require(gamma > 0 && gamma <= 1, "amplify_puredp_form: gamma out of range");
  require(alpha > 1, "amplify_puredp_form: alpha must be > 1");
  if (base.eps_inf() == 0) return 0.0;
  const double log_x =
      std::log(gamma) + base(alpha) + log_expm1(base.eps_inf());
  return alpha / (alpha - 1) * log_add_exp(0.0, log_x);
}

double amplify_fractional(const std::function<double(std::int64_t)>& bound_at_int,
                          double alpha) {
  require(alpha > 1 && !std::isnan(alpha), "amplify_fractional: alpha > 1");
  if (alpha == kInf) {
    throw std::invalid_argument("amplify_fractional: alpha must be finite");
  }
  const double lambda = alpha - 1;
  const double fl = std::floor(lambda);
  const std::int64_t j_lo = static_cast<std::int64_t>(fl);
  const double w = lambda - fl;
  if (w == 0) return bound_at_int(j_lo + 1);
  const std::int64_t j_hi = j_lo + 1;
  const double k_lo = (j_lo == 0) ? 0.0 : j_lo * bound_at_int(j_lo + 1);
  const double k_hi = j_hi * bound_at_int(j_hi + 1);
  return ((1 - w) * k_lo + w * k_hi) / lambda;
}

BoundInterval approx_general_bound(const RdpCurve& base, double gamma,
                                   std::int64_t alpha) {
  check_amplify_args(gamma, alpha, /*open_gamma=*/false);
  const double log_gamma = std::log(gamma);
  const double coef2 = log_order2_coef(base);
  auto term = [&](std::int64_t j) {
    return general_term_log(base, log_gamma, coef2, alpha, j);
  };
  const double m = std::max(0.0, max_term_log(term, 2, alpha));
  const double inv = 1.0 / static_cast<double>(alpha - 1);
  return {m * inv, (m + std::log(static_cast<double>(alpha) + 1)) * inv};
}

BoundInterval approx_lower_bound(const RdpCurve& base, double gamma,
                                 std::int64_t alpha) {
  require(base.is_tight(), "approx_lower_bound: requires a tight base curve");
  require(gamma > 0 && gamma < 1, "approx_lower_bound: gamma in (0, 1)");
  require(alpha >= 2, "approx_lower_bound: alpha >= 2");
  const double log_t = std::log(gamma) - std::log1p(-gamma);
  auto term = [&](std::int64_t j) {
    return lower_term_log(base, log_t, alpha, j);
  };
  const double m = std::max(0.0, max_term_log(term, 1, alpha));
  const double inv = 1.0 / static_cast<double>(alpha - 1);
  const double prefix =
      static_cast<double>(alpha) / (alpha - 1) * std::log1p(-gamma);
  return {std::max(0.0, prefix + m * inv),
          std::max(0.0, prefix +
                            (m + std::log(static_cast<double>(alpha) + 1)) * inv)};
}

double asymptotic_gaussian(double sigma, double gamma, std::int64_t n,
                           double alpha, AsymptoticCase which) {
  require(sigma > 0 && std::isfinite(sigma), "asymptotic_gaussian: sigma > 0");
  require(gamma > 0 && gamma < 1, "asymptotic_gaussian: gamma in (0, 1)");
  require(n >= 2, "asymptotic_gaussian: n >= 2");
  require(alpha > 1, "asymptotic_gaussian: alpha > 1");
  const double dn = static_cast<double>(n);
  if (which == AsymptoticCase::kGood) {
    return alpha * gamma * gamma /
           (2 * sigma * sigma + gamma * (dn - 1.0 / dn) / 2);
  }
  const double astar = sigma * sigma / gamma * dn / (dn - 1) + 1;
  if (alpha >= astar) return kInf;
  return alpha * gamma * gamma / (2 * sigma * sigma) * (astar / (astar - alpha)) +
         0.5 * std::log((astar - 1) / astar) +
         1.0 / (2 * (alpha - 1)) * std::log(astar / (astar - alpha));
}

namespace {

struct SubsampleState {
  RdpCurve base;
  double gamma = 0;
  BoundKind kind = BoundKind::kGeneral;
  int alpha_thresh = 256;
  std::int64_t n = 0;
  double sigma = 0;  // asymptotic kinds only
  mutable std::mutex mu;
  mutable std::map<std::int64_t, double> memo;

  double bound_at_int(std::int64_t j) const {
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = memo.find(j);
      if (it != memo.end()) return it->second;
    }
    double v = 0;
    switch (kind) {
      case BoundKind::kGeneral:
        v = (j <= alpha_thresh) ? amplify_general(base, gamma, j)
                                : approx_general_bound(base, gamma, j).hi;
        break;
      case BoundKind::kTight:
        v = (j <= alpha_thresh) ? amplify_tight(base, gamma, j)
                                : approx_general_bound(base, gamma, j).hi;
        break;
      case BoundKind::kLower:
        v = (j <= alpha_thresh) ? amplify_lower(base, gamma, j)
                                : approx_lower_bound(base, gamma, j).lo;
        break;
      default:
        throw std::logic_error("bound_at_int: closed-form kind");
    }
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(j, v);
    return v;
  }

  BoundInterval interval_at_int(std::int64_t j) const {
    switch (kind) {
      case BoundKind::kGeneral:
      case BoundKind::kTight:
        if (j > alpha_thresh) return approx_general_bound(base, gamma, j);
        break;
      case BoundKind::kLower:
        if (j > alpha_thresh) return approx_lower_bound(base, gamma, j);
        break;
      default:
        break;
    }
    const double v = bound_at_int(j);
    return {v, v};
  }
};

}  // namespace

RdpCurve subsample(const RdpCurve& base, double gamma, BoundKind kind,
                   const SubsampleOptions& options) {
  require(gamma > 0 && gamma <= 1, "subsample: gamma out of range");
  require(options.alpha_thresh >= 2, "subsample: alpha_thresh >= 2");

  auto st = std::make_shared<SubsampleState>();
  st->base = base;
  st->gamma = gamma;
  st->kind = kind;
  st->alpha_thresh = options.alpha_thresh;
  st->n = options.n;

  switch (kind) {
    case BoundKind::kGeneral:
      break;
    case BoundKind::kTight:
      require(base.is_tight() && base.is_self_consistent(),
              "subsample: tight kind requires a tight, self-consistent base");
      break;
    case BoundKind::kLower:
      require(base.is_tight(), "subsample: lower kind requires a tight base");
      require(gamma < 1, "subsample: lower kind requires gamma < 1");
      break;
    case BoundKind::kPureDpForm:
      require(base.eps_inf() < kInf,
              "subsample: puredp_form requires finite eps(inf)");
      break;
    case BoundKind::kAsymptoticBad:
    case BoundKind::kAsymptoticGood: {
      require(base.serializable() && base.spec().value("kind", "") == "gaussian",
              "subsample: asymptotic kinds require a gaussian base");
      require(options.n >= 2, "subsample: asymptotic kinds require n >= 2");
      require(gamma < 1, "subsample: asymptotic kinds require gamma < 1");
      st->sigma = base.spec().at("sigma").get<double>();
      break;
    }
  }

  RdpCurveInit init;
  init.eval = [st](double alpha) -> double {
    switch (st->kind) {
      case BoundKind::kPureDpForm:
        return amplify_puredp_form(st->base, st->gamma, alpha);
      case BoundKind::kAsymptoticBad:
        return asymptotic_gaussian(st->sigma, st->gamma, st->n, alpha,
                                   AsymptoticCase::kBad);
      case BoundKind::kAsymptoticGood:
        return asymptotic_gaussian(st->sigma, st->gamma, st->n, alpha,
                                   AsymptoticCase::kGood);
      default:
        return amplify_fractional(
            [st](std::int64_t j) { return st->bound_at_int(j); }, alpha);
    }
  };
  init.eval_interval = [st, eval = init.eval](double alpha) -> BoundInterval {
    switch (st->kind) {
      case BoundKind::kGeneral:
      case BoundKind::kTight:
      case BoundKind::kLower: {
        const double lambda = alpha - 1;
        if (lambda == std::floor(lambda)) {
          return st->interval_at_int(static_cast<std::int64_t>(lambda) + 1);
        }
        const double lo = amplify_fractional(
            [st](std::int64_t j) { return st->interval_at_int(j).lo; }, alpha);
        const double hi = amplify_fractional(
            [st](std::int64_t j) { return st->interval_at_int(j).hi; }, alpha);
        return {lo, hi};
      }
      default: {
        const double v = eval(alpha);
        return {v, v};
      }
    }
  };

  const bool upper_kind = kind == BoundKind::kGeneral ||
                          kind == BoundKind::kTight ||
                          kind == BoundKind::kPureDpForm;
  if (upper_kind && base.eps_inf() < kInf) {
    // Limit of the pure-DP form as alpha -> inf.
    init.eps_inf = log_add_exp(
        0.0, std::log(gamma) + base.eps_inf() + log_expm1(base.eps_inf()));
  } else {
    init.eps_inf = kInf;
  }
  if (kind == BoundKind::kGeneral || kind == BoundKind::kTight) {
    // KL <= eps'(2) by monotonicity; the interpolated curve is constant on
    // (1, 2] anyway.
    init.eps_kl = st->bound_at_int(2);
  }
  init.tight = false;
  init.self_consistent = false;

  std::string id = std::string("subsample[") + to_string(kind) +
                   "](gamma=" + format_param(gamma) +
                   ",thresh=" + format_param(options.alpha_thresh);
  if (options.n > 0) id += ",n=" + format_param(static_cast<double>(options.n));
  id += ")*" + base.identity();
  init.identity = std::move(id);

  if (base.serializable()) {
    nlohmann::json spec = {{"kind", "subsample"},
                           {"base", base.spec()},
                           {"gamma", gamma},
                           {"bound_kind", to_string(kind)},
                           {"alpha_thresh", options.alpha_thresh}};
    if (options.n > 0) spec["n"] = options.n;
    init.spec = std::move(spec);
  }
  return RdpCurve(std::move(init));
}

}  // namespace samplerdp
