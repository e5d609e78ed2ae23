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

#include "accountant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace samplerdp {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Sign of K'(lambda) - slope, by symmetric finite differences with a
// lambda-proportional step. Infinite K past a pole counts as "past the
// minimizer".
template <typename KF>
int derivative_sign(const KF& K, double lambda, double slope) {
  const double h = 1e-6 * lambda;
  const double k_plus = K(lambda + h);
  const double k_minus = K(lambda - h);
  if (k_plus == kInf || k_minus == kInf) return 1;
  const double d = (k_plus - k_minus) / (2 * h) - slope;
  return (d > 0) - (d < 0);
}

}  // namespace

PrivacyParams rdp_to_dp(double eps_alpha, double alpha, double delta) {
  require(eps_alpha >= 0 && !std::isnan(eps_alpha),
          "rdp_to_dp: eps_alpha must be >= 0");
  require(alpha > 1, "rdp_to_dp: alpha must be > 1");
  require(delta > 0 && delta < 1, "rdp_to_dp: delta must lie in (0, 1)");
  if (alpha == kInf) return {eps_alpha, delta};
  return {eps_alpha - std::log(delta) / (alpha - 1), delta};
}

void CgfLedger::compose(const RdpCurve& curve, std::int64_t count) {
  require(count >= 1, "compose: count must be >= 1");
  proj_x_.clear();
  proj_y_.clear();
  proj_pole_ = kInf;

  auto it = index_.find(curve.identity());
  if (it != index_.end()) {
    entries_[it->second].count += count;
  } else {
    index_.emplace(curve.identity(), entries_.size());
    entries_.push_back({curve, count});
  }
  total_count_ += count;
  eps_inf_total_ += count * curve.eps_inf();
  // Entries without a KL level contribute eps(2), a valid bound on the KL
  // divergence by monotonicity in alpha.
  const double kl = curve.eps_kl() ? *curve.eps_kl() : curve(2.0);
  eps_kl_total_ += count * kl;
}

double CgfLedger::raw_cgf(double lambda) const {
  require(lambda > 0 && !std::isnan(lambda), "cgf: lambda must be > 0");
  double total = 0;
  for (const Entry& e : entries_) {
    const double eps = e.curve(lambda + 1);
    if (eps == kInf) return kInf;
    // count * (lambda * eps): keeps K(compose^k) == k * K(compose^1) exact.
    total += static_cast<double>(e.count) * (lambda * eps);
  }
  return total;
}

double CgfLedger::projected_cgf(double lambda) const {
  if (lambda >= proj_pole_) return kInf;
  const auto& xs = proj_x_;
  const auto& ys = proj_y_;
  if (lambda >= xs.back()) {
    // Continue with the final hull slope.
    const std::size_t m = xs.size();
    const double slope = (ys[m - 1] - ys[m - 2]) / (xs[m - 1] - xs[m - 2]);
    return ys[m - 1] + slope * (lambda - xs[m - 1]);
  }
  const auto it = std::upper_bound(xs.begin(), xs.end(), lambda);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin());
  const double w = (lambda - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] + w * (ys[i] - ys[i - 1]);
}

double CgfLedger::cgf(double lambda) const {
  require(lambda > 0 && !std::isnan(lambda), "cgf: lambda must be > 0");
  if (is_projected()) return projected_cgf(lambda);
  return raw_cgf(lambda);
}

ConversionResult CgfLedger::eps_from_delta(double delta, double tol) const {
  require(delta > 0 && delta < 1, "eps_from_delta: delta must lie in (0, 1)");
  require(tol > 0, "eps_from_delta: tol must be > 0");
  // An empty ledger certifies nothing; its pure-DP track is vacuous.
  const double eps_inf_track = entries_.empty() ? kInf : eps_inf_total_;
  const double log_inv_delta = -std::log(delta);
  auto K = [this](double l) { return cgf(l); };
  auto objective = [&](double l) {
    const double k = K(l);
    return (k == kInf) ? kInf : (log_inv_delta + k) / l;
  };
  // Unimodal objective: derivative sign of (log(1/delta) + K(l)) / l.
  auto usign = [&](double l) {
    const double h = 1e-6 * l;
    const double kp = K(l + h);
    const double km = K(l - h);
    if (kp == kInf || km == kInf) return 1;
    const double kprime = (kp - km) / (2 * h);
    const double d = kprime * l - (log_inv_delta + K(l));
    return (d > 0) - (d < 0);
  };

  ConversionResult out;
  double lo = tol;
  double hi = 1.0;
  if (usign(hi) <= 0) {
    // Doubling phase: grow until the derivative turns positive.
    bool bracketed = false;
    while (hi < solver.lambda_cap) {
      lo = hi;
      hi *= 2;
      if (usign(hi) > 0) {
        bracketed = true;
        break;
      }
    }
    if (!bracketed) {
      const double capped = objective(solver.lambda_cap);
      // The flag marks an unattained CGF-track infimum; when the pure-DP
      // track wins anyway the answer is exact.
      out.infimum_limited = capped < eps_inf_track;
      out.lambda_star = solver.lambda_cap;
      out.value = std::min(capped, eps_inf_track);
      return out;
    }
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // double resolution exhausted
    if (usign(mid) > 0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.lambda_star = 0.5 * (lo + hi);
  out.value = std::min(objective(out.lambda_star), eps_inf_track);
  return out;
}

ConversionResult CgfLedger::delta_from_eps(double eps, double tol) const {
  require(eps >= 0 && !std::isnan(eps), "delta_from_eps: eps must be >= 0");
  require(tol > 0, "delta_from_eps: tol must be > 0");
  if (!entries_.empty() && eps_inf_total_ < kInf && eps >= eps_inf_total_) {
    // Pure-DP track dominates: the composition is (eps_inf_total, 0)-DP.
    return {0.0, kInf, false};
  }
  auto K = [this](double l) { return cgf(l); };
  auto objective = [&](double l) {
    const double k = K(l);
    return (k == kInf) ? kInf : k - l * eps;
  };
  auto vsign = [&](double l) { return derivative_sign(K, l, eps); };

  ConversionResult out;
  double lo = tol;
  double hi = 1.0;
  if (vsign(hi) <= 0) {
    bool bracketed = false;
    while (hi < solver.lambda_cap) {
      lo = hi;
      hi *= 2;
      if (vsign(hi) > 0) {
        bracketed = true;
        break;
      }
    }
    if (!bracketed) {
      out.infimum_limited = true;
      out.lambda_star = solver.lambda_cap;
      out.value = std::min(1.0, std::exp(objective(solver.lambda_cap)));
      return out;
    }
  } else if (vsign(lo) > 0) {
    // Minimizer collapses toward lambda -> 0+, where the objective tends to
    // K(0+) = 0 and delta to 1.
    out.lambda_star = lo;
    out.value = std::min(1.0, std::exp(objective(lo)));
    return out;
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // double resolution exhausted
    if (vsign(mid) > 0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.lambda_star = 0.5 * (lo + hi);
  out.value = std::min(1.0, std::exp(objective(out.lambda_star)));
  return out;
}

void CgfLedger::project(const ProjectionConfig& config) {
  require(config.points >= 8, "project: grid needs at least 8 points");
  require(config.lambda_min > 0 && config.lambda_max > config.lambda_min,
          "project: invalid lambda range");

  proj_x_.clear();
  proj_y_.clear();
  proj_pole_ = kInf;

  const double ratio = std::log(config.lambda_max / config.lambda_min) /
                       (config.points - 1);
  std::vector<double> xs{0.0};
  std::vector<double> ys{0.0};
  for (int i = 0; i < config.points; ++i) {
    const double lambda = config.lambda_min * std::exp(ratio * i);
    const double k = raw_cgf(lambda);
    if (k == kInf) {
      proj_pole_ = lambda;
      break;
    }
    xs.push_back(lambda);
    ys.push_back(k);
  }

  // Lower convex hull (monotone chain over points already sorted by x).
  std::vector<double> hx, hy;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    while (hx.size() >= 2) {
      const std::size_t m = hx.size();
      const double cross = (hx[m - 1] - hx[m - 2]) * (ys[i] - hy[m - 2]) -
                           (hy[m - 1] - hy[m - 2]) * (xs[i] - hx[m - 2]);
      if (cross <= 0) {
        hx.pop_back();
        hy.pop_back();
      } else {
        break;
      }
    }
    hx.push_back(xs[i]);
    hy.push_back(ys[i]);
  }
  if (hx.size() < 2) {
    // Degenerate single-point hull (empty ledger): K == 0 everywhere.
    hx = {0.0, 1.0};
    hy = {0.0, 0.0};
  }
  proj_x_ = std::move(hx);
  proj_y_ = std::move(hy);
}

}  // namespace samplerdp
