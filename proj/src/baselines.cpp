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

#include "baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace samplerdp {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void check_params(const PrivacyParams& p) {
  require(p.eps >= 0 && !std::isnan(p.eps), "PrivacyParams: eps must be >= 0");
  require(p.delta >= 0 && p.delta <= 1, "PrivacyParams: delta must lie in [0, 1]");
}

}  // namespace

PrivacyParams naive_compose(const PrivacyParams& per_round, std::int64_t rounds) {
  check_params(per_round);
  require(rounds >= 1, "naive_compose: rounds must be >= 1");
  return {rounds * per_round.eps, std::min(1.0, rounds * per_round.delta)};
}

PrivacyParams strong_compose(const PrivacyParams& per_round, std::int64_t rounds,
                             double delta_slack) {
  check_params(per_round);
  require(rounds >= 1, "strong_compose: rounds must be >= 1");
  require(per_round.eps <= 1, "strong_compose: requires per-round eps <= 1");
  require(delta_slack > 0 && delta_slack < 1,
          "strong_compose: delta_slack must lie in (0, 1)");
  const double k = static_cast<double>(rounds);
  const double eps = per_round.eps * std::sqrt(2 * k * std::log(1 / delta_slack)) +
                     2 * k * per_round.eps * per_round.eps;
  return {eps, std::min(1.0, k * per_round.delta + delta_slack)};
}

PrivacyParams subsample_dp(const PrivacyParams& params, double gamma) {
  check_params(params);
  require(gamma > 0 && gamma <= 1, "subsample_dp: gamma must lie in (0, 1]");
  return {std::log1p(gamma * std::expm1(params.eps)), gamma * params.delta};
}

namespace {

double base_eps_at(const RdpCurve& base, double delta) {
  CgfLedger ledger;
  ledger.compose(base, 1);
  return ledger.eps_from_delta(delta).value;
}

}  // namespace

CalibratedResult calibrated_strong_dp(const RdpCurve& base, double gamma,
                                      std::int64_t rounds, double target_delta) {
  require(rounds >= 1, "calibrated_strong_dp: rounds must be >= 1");
  require(gamma > 0 && gamma <= 1, "calibrated_strong_dp: gamma in (0, 1]");
  require(target_delta > 0 && target_delta < 1,
          "calibrated_strong_dp: target_delta in (0, 1)");

  constexpr int kCandidates = 40;
  const double k = static_cast<double>(rounds);
  const double hi = target_delta / (gamma * k);
  const double lo = hi / 10.0;

  CalibratedResult best;
  for (int i = 0; i < kCandidates; ++i) {
    const double delta_tilde =
        lo * std::pow(hi / lo, static_cast<double>(i) / (kCandidates - 1));
    const double delta_slack = target_delta - k * gamma * delta_tilde;
    if (delta_slack <= 0 || delta_tilde >= 1) continue;
    const double eps_tilde = base_eps_at(base, delta_tilde);
    const PrivacyParams round =
        subsample_dp({eps_tilde, delta_tilde}, gamma);
    if (round.eps > 1) continue;  // outside the strong-composition hypothesis
    const PrivacyParams total = strong_compose(round, rounds, delta_slack);
    if (total.eps < best.eps) {
      best = {total.eps, delta_tilde, delta_slack, true};
    }
  }
  return best;
}

CalibratedResult calibrated_naive_dp(const RdpCurve& base, double gamma,
                                     std::int64_t rounds, double target_delta) {
  require(rounds >= 1, "calibrated_naive_dp: rounds must be >= 1");
  require(gamma > 0 && gamma <= 1, "calibrated_naive_dp: gamma in (0, 1]");
  require(target_delta > 0 && target_delta < 1,
          "calibrated_naive_dp: target_delta in (0, 1)");

  const double delta_tilde = target_delta / (gamma * static_cast<double>(rounds));
  if (delta_tilde >= 1) {
    // The whole budget exceeds 1 per round; spend delta = 1 trivially.
    return {0.0, 1.0, 0.0, false};
  }
  const double eps_tilde = base_eps_at(base, delta_tilde);
  const PrivacyParams round = subsample_dp({eps_tilde, delta_tilde}, gamma);
  const PrivacyParams total = naive_compose(round, rounds);
  return {total.eps, delta_tilde, 0.0, true};
}

}  // namespace samplerdp
