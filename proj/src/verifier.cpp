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

#include "verifier.hpp"

#include <cmath>

namespace samplerdp {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// For discrete pairs: above this exponent the excess form gains nothing
// over the direct log-sum (the -1 correction is below e^-50).
constexpr double kDiscreteLogSwitch = 50.0;

// log((1-gamma) + gamma e^ell): log of the mixture-to-q ratio.
double log_mix_ratio(double gamma, double ell) {
  return log_add_exp(std::log1p(-gamma), std::log(gamma) + ell);
}

// (1 + u)^alpha - 1 - alpha u, the part of the binomial expansion that
// starts at u^2. Nonnegative for u > -1, alpha > 1. The direct formula
// cancels catastrophically for small u, so a partial binomial series takes
// over there.
double binom_excess(double alpha, double u) {
  if (std::abs(u) * std::max(alpha, 2.0) > 1e-3) {
    return std::expm1(alpha * std::log1p(u)) - alpha * u;
  }
  double coef = alpha * (alpha - 1) / 2;  // C(alpha, 2)
  double power = u * u;
  double sum = 0;
  for (int k = 2; k <= 6; ++k) {
    sum += coef * power;
    power *= u;
    coef *= (alpha - k) / (k + 1);
  }
  return sum;
}

struct Region {
  double lo = 0;
  double hi = 0;
  std::vector<double> breakpoints;
  double peak = -kInf;
};

// Integration region for an alpha-tilted integrand. The power shifts mass
// toward x ~ alpha * shift (the product q^(1-alpha) p^alpha peaks there for
// location families), and that peak can revive past a window edge that
// itself looks dead; seeding the window with the tilt and registering every
// scanned local maximum as a panel breakpoint keeps the quadrature honest.
Region integration_region(const WorstCasePair& pair,
                          const std::function<double(double)>& log_f,
                          double alpha_tilt) {
  // The tilted peak sits near alpha times the location shift, not the noise
  // scale; widening by the scale would drag dead tails into the window.
  const double span = std::max(std::abs(pair.seed_hi - pair.seed_lo), 1e-9);
  Region r;
  r.lo = pair.seed_lo - 40 * pair.scale - alpha_tilt * span;
  r.hi = pair.seed_hi + 40 * pair.scale + alpha_tilt * span;
  extend_window(log_f, r.lo, r.hi);
  r.breakpoints = pair.breakpoints;

  constexpr int kScan = 4097;
  std::vector<double> vals(kScan);
  for (int i = 0; i < kScan; ++i) {
    vals[i] = log_f(r.lo + (r.hi - r.lo) * i / (kScan - 1));
    r.peak = std::max(r.peak, vals[i]);
  }
  int added = 0;
  for (int i = 1; i + 1 < kScan && added < 64; ++i) {
    if (vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1] &&
        vals[i] > r.peak - 300) {
      r.breakpoints.push_back(r.lo + (r.hi - r.lo) * i / (kScan - 1));
      ++added;
    }
  }
  return r;
}

}  // namespace

WorstCasePair gaussian_pair(double sigma) {
  if (!(sigma > 0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("gaussian_pair: sigma must be > 0");
  }
  constexpr double kLogSqrt2Pi = 0.9189385332046727;
  const double norm = -kLogSqrt2Pi - std::log(sigma);
  const double inv2 = 1.0 / (2 * sigma * sigma);
  WorstCasePair pair;
  pair.log_q = [norm, inv2](double x) { return norm - x * x * inv2; };
  pair.log_p = [norm, inv2](double x) { return norm - (x - 1) * (x - 1) * inv2; };
  pair.log_ratio = [inv2](double x) { return (2 * x - 1) * inv2; };
  pair.seed_lo = 0;
  pair.seed_hi = 1;
  pair.scale = sigma;
  return pair;
}

WorstCasePair laplace_pair(double b) {
  if (!(b > 0) || !std::isfinite(b)) {
    throw std::invalid_argument("laplace_pair: scale must be > 0");
  }
  const double norm = -std::log(2 * b);
  WorstCasePair pair;
  pair.log_q = [norm, b](double x) { return norm - std::abs(x) / b; };
  pair.log_p = [norm, b](double x) { return norm - std::abs(x - 1) / b; };
  pair.log_ratio = [b](double x) {
    if (x <= 0) return -1.0 / b;
    if (x >= 1) return 1.0 / b;
    return (2 * x - 1) / b;
  };
  pair.seed_lo = 0;
  pair.seed_hi = 1;
  pair.scale = b;
  pair.breakpoints = {0.0, 1.0};
  return pair;
}

WorstCasePair randresp_pair(double p) {
  if (!(p > 0 && p < 1)) {
    throw std::invalid_argument("randresp_pair: p must lie in (0, 1)");
  }
  WorstCasePair pair;
  pair.discrete = true;
  pair.q1 = p;
  pair.q0 = 1 - p;
  pair.p1 = 1 - p;
  pair.p0 = p;
  return pair;
}

WorstCasePair worst_case_pair(const nlohmann::json& mech_spec) {
  const std::string kind = mech_spec.value("kind", "");
  if (kind == "gaussian") return gaussian_pair(mech_spec.at("sigma").get<double>());
  if (kind == "laplace") return laplace_pair(mech_spec.at("b").get<double>());
  if (kind == "randresp") return randresp_pair(mech_spec.at("p").get<double>());
  throw std::invalid_argument("worst_case_pair: no worst-case pair for kind '" +
                              kind + "'");
}

double oracle_renyi(const WorstCasePair& pair, double gamma, double alpha,
                    double tol) {
  if (!(gamma >= 0 && gamma < 1)) {
    throw std::invalid_argument("oracle_renyi: gamma must lie in [0, 1)");
  }
  if (!(alpha > 1)) {
    throw std::invalid_argument("oracle_renyi: alpha must be > 1");
  }
  if (gamma == 0) return 0.0;

  if (pair.discrete) {
    const double i1 = alpha * log_mix_ratio(gamma, std::log(pair.p1 / pair.q1));
    const double i0 = alpha * log_mix_ratio(gamma, std::log(pair.p0 / pair.q0));
    if (std::max(i1, i0) < kDiscreteLogSwitch) {
      // E_q[(mix/q)^alpha] - 1 with the vanishing first-order term removed:
      // E_q[alpha gamma (p/q - 1)] = 0 because both pmfs sum to 1.
      const double excess =
          pair.q1 * binom_excess(alpha, gamma * (pair.p1 / pair.q1 - 1)) +
          pair.q0 * binom_excess(alpha, gamma * (pair.p0 / pair.q0 - 1));
      return std::log1p(std::max(excess, 0.0)) / (alpha - 1);
    }
    const double terms[2] = {std::log(pair.q1) + i1, std::log(pair.q0) + i0};
    return log_sum_exp(std::span<const double>(terms, 2)) / (alpha - 1);
  }

  // Integrate q [(mix/q)^alpha - 1 - alpha gamma (p/q - 1)] in the log
  // domain. The first-order term integrates to zero analytically (both
  // densities have unit mass); what remains is pointwise nonnegative, so
  // its log is integrable by log-sum-exp Simpson and the absolute log error
  // turns into relative error on the excess - precise for divergences of
  // any magnitude.
  auto ratio = [&pair](double x) {
    return pair.log_ratio ? pair.log_ratio(x) : pair.log_p(x) - pair.log_q(x);
  };
  auto log_h2 = [&](double x) -> double {
    const double ell = ratio(x);
    const double lq = pair.log_q(x);
    const double e_log = alpha * log_mix_ratio(gamma, ell);
    if (e_log > 50) {
      // (1+u)^alpha dominates 1 + alpha u by > 1e10 here.
      return lq + e_log;
    }
    const double v = binom_excess(alpha, gamma * std::expm1(ell));
    return v <= 0 ? -kInf : lq + std::log(v);
  };
  const Region region = integration_region(pair, log_h2, alpha);
  const LogQuadResult r =
      log_integrate(log_h2, region.lo, region.hi, region.breakpoints,
                    std::max(tol, 1e-12), region.peak);
  if (!r.converged) {
    throw QuadratureError("oracle_renyi: quadrature did not converge");
  }
  const double log_excess = r.log_value;
  if (log_excess > 30) {
    // log1p(e^x) - x < 1e-13 here.
    return log_excess / (alpha - 1);
  }
  return std::log1p(std::exp(log_excess)) / (alpha - 1);
}

double oracle_chi(const WorstCasePair& pair, std::int64_t order, double tol,
                  bool absolute) {
  if (order < 1 || (!absolute && order % 2 != 0)) {
    throw std::invalid_argument(
        "oracle_chi: signed moment identity needs an even order");
  }

  if (pair.discrete) {
    const double t1 = pair.p1 / pair.q1 - 1;
    const double t0 = pair.p0 / pair.q0 - 1;
    const double v1 = absolute ? std::pow(std::abs(t1), order) : std::pow(t1, order);
    const double v0 = absolute ? std::pow(std::abs(t0), order) : std::pow(t0, order);
    return pair.q1 * v1 + pair.q0 * v0;
  }

  // |p/q - 1|^order; for the supported even signed orders the integrands
  // coincide.
  auto ratio = [&pair](double x) {
    return pair.log_ratio ? pair.log_ratio(x) : pair.log_p(x) - pair.log_q(x);
  };
  auto log_f = [&](double x) {
    const double ell = ratio(x);
    double log_t;
    if (ell > 30) {
      log_t = log_expm1(ell);
    } else {
      const double t = std::abs(std::expm1(ell));
      if (t == 0) return -kInf;
      log_t = std::log(t);
    }
    return pair.log_q(x) + order * log_t;
  };
  const Region region =
      integration_region(pair, log_f, static_cast<double>(order));
  const LogQuadResult r =
      log_integrate(log_f, region.lo, region.hi, region.breakpoints,
                    std::max(tol, 1e-12), region.peak);
  if (!r.converged) {
    throw QuadratureError("oracle_chi: quadrature did not converge");
  }
  return std::exp(r.log_value);
}

std::vector<BoundRow> sandwich_report(const nlohmann::json& mech_spec,
                                      double gamma,
                                      std::span<const double> alphas,
                                      const SandwichOptions& options) {
  const std::string kind = mech_spec.value("kind", "");
  RdpCurve base;
  if (kind == "gaussian") {
    base = gaussian_rdp(mech_spec.at("sigma").get<double>());
  } else if (kind == "laplace") {
    base = laplace_rdp(mech_spec.at("b").get<double>());
  } else if (kind == "randresp") {
    base = randresp_rdp(mech_spec.at("p").get<double>());
  } else {
    throw std::invalid_argument("sandwich_report: unsupported kind '" + kind +
                                "'");
  }
  const WorstCasePair pair = worst_case_pair(mech_spec);
  const bool tight_ok = base.is_tight() && base.is_self_consistent();
  const std::int64_t n_asym =
      options.n > 0 ? options.n
                    : std::max<std::int64_t>(2, std::llround(100.0 / gamma));

  constexpr double kRelSlack = 1e-8;
  constexpr double kAbsSlack = 1e-12;
  auto leq = [](double a, double b) {
    return a <= b + kRelSlack * std::max(std::abs(a), std::abs(b)) + kAbsSlack;
  };

  std::vector<BoundRow> rows;
  rows.reserve(alphas.size());
  for (double alpha_real : alphas) {
    const std::int64_t alpha = std::llround(alpha_real);
    if (alpha < 2 || alpha != alpha_real) {
      throw std::invalid_argument("sandwich_report: alphas must be integers >= 2");
    }
    BoundRow row;
    row.alpha = static_cast<double>(alpha);
    row.lower = amplify_lower(base, gamma, alpha);
    row.upper_general = amplify_general(base, gamma, alpha);
    row.upper_tight = tight_ok ? amplify_tight(base, gamma, alpha) : kNan;
    if (kind == "gaussian") {
      const double sigma = mech_spec.at("sigma").get<double>();
      row.asymptotic_bad = asymptotic_gaussian(sigma, gamma, n_asym, row.alpha,
                                               AsymptoticCase::kBad);
      row.asymptotic_good = asymptotic_gaussian(sigma, gamma, n_asym, row.alpha,
                                                AsymptoticCase::kGood);
    } else {
      row.asymptotic_bad = kNan;
      row.asymptotic_good = kNan;
    }
    try {
      row.oracle = oracle_renyi(pair, gamma, row.alpha, options.quad_tol);
      row.oracle_ok = true;
    } catch (const QuadratureError&) {
      row.oracle = kNan;
      row.oracle_ok = false;
    }
    row.pass = row.oracle_ok && leq(row.lower, row.oracle) &&
               leq(row.oracle, row.upper_general);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace samplerdp
