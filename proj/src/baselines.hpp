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

#include "accountant.hpp"

namespace samplerdp {

// k-fold composition with linear parameter growth: (k eps, k delta).
PrivacyParams naive_compose(const PrivacyParams& per_round, std::int64_t rounds);

// Strong composition: (eps sqrt(2k ln(1/delta_slack)) + 2k eps^2,
// k delta + delta_slack). Requires per_round.eps <= 1.
PrivacyParams strong_compose(const PrivacyParams& per_round, std::int64_t rounds,
                             double delta_slack);

// Subsampling lemma for (eps, delta)-DP:
// (log(1 + gamma (e^eps - 1)), gamma delta).
PrivacyParams subsample_dp(const PrivacyParams& params, double gamma);

struct CalibratedResult {
  double eps = kInf;
  double delta_tilde = 0;  // chosen per-round delta for the base mechanism
  double delta_slack = 0;  // delta* handed to strong composition
  bool feasible = false;
};

// Baseline of the classical pipeline: convert the base curve to a per-round
// (eps~, delta~) pair via the accountant, amplify it with the subsampling
// lemma, then strong-compose k rounds so the total delta stays within
// target_delta. delta~ is grid-searched (40 log-spaced candidates in
// [target/(10 gamma k), target/(gamma k)]) with delta* taking the residual.
CalibratedResult calibrated_strong_dp(const RdpCurve& base, double gamma,
                                      std::int64_t rounds, double target_delta);

// Same pipeline under naive composition; the per-round delta budget is
// spent entirely (delta~ = target / (gamma k)), which is optimal because
// eps~(delta~) is nonincreasing.
CalibratedResult calibrated_naive_dp(const RdpCurve& base, double gamma,
                                     std::int64_t rounds, double target_delta);

}  // namespace samplerdp
