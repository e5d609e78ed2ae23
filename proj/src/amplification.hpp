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
#include <optional>
#include <string_view>

#include "mechanisms.hpp"

namespace samplerdp {

// Which subsampling bound a curve evaluates.
enum class BoundKind {
  kGeneral,         // general upper bound, integer orders + CGF interpolation
  kTight,           // sharper upper bound via forward finite differences
  kLower,           // constructive lower bound (worst-case pair)
  kPureDpForm,      // closed-form upper bound for mechanisms with finite eps(inf)
  kAsymptoticBad,   // large-n Gaussian approximation, adversarial data
  kAsymptoticGood,  // large-n Gaussian approximation, benign data
};

const char* to_string(BoundKind kind);
std::optional<BoundKind> bound_kind_from_string(std::string_view name);

// General upper bound on the RDP parameter of the subsampled mechanism at
// integer order alpha >= 2, for sampling fraction gamma in (0, 1]. The
// j-indexed terms are assembled in log space and combined by log-sum-exp.
double amplify_general(const RdpCurve& base, double gamma, std::int64_t alpha);

// Sharper upper bound; requires base.is_tight() && base.is_self_consistent().
// Terms whose finite difference is cancellation-limited (or has the wrong
// sign) fall back to the corresponding general-bound term, which bounds the
// same quantity.
double amplify_tight(const RdpCurve& base, double gamma, std::int64_t alpha);

// Constructive lower bound at integer alpha >= 1 (0 at alpha == 1); requires
// base.is_tight() and gamma in (0, 1).
double amplify_lower(const RdpCurve& base, double gamma, std::int64_t alpha);

// Closed-form upper bound for mechanisms with finite eps(inf); valid for all
// real alpha > 1.
double amplify_puredp_form(const RdpCurve& base, double gamma, double alpha);

// Extends an integer-order bound to real alpha > 1 by linear interpolation
// of the CGF K(lambda) = lambda * bound(lambda + 1) between bracketing
// integers, anchored at K(0) = 0. Integer alpha passes through unmodified.
double amplify_fractional(const std::function<double(std::int64_t)>& bound_at_int,
                          double alpha);

// Bracketing approximation of amplify_general for large alpha: locates the
// dominant log-sum-exp term and returns [max, max + log(alpha + 1)] scaled
// by 1/(alpha - 1). The exact value always lies inside.
BoundInterval approx_general_bound(const RdpCurve& base, double gamma,
                                   std::int64_t alpha);

// Same bracketing applied to the lower-bound sum; lo remains a valid lower
// bound.
BoundInterval approx_lower_bound(const RdpCurve& base, double gamma,
                                 std::int64_t alpha);

enum class AsymptoticCase { kBad, kGood };

// Large-n closed forms for the subsampled Gaussian mechanism. The bad case
// has a pole: +inf is returned for alpha >= sigma^2/gamma * n/(n-1) + 1.
double asymptotic_gaussian(double sigma, double gamma, std::int64_t n,
                           double alpha, AsymptoticCase which);

struct SubsampleOptions {
  // Orders up to alpha_thresh are summed exactly; larger orders use the
  // bracketing approximation (upper endpoint for upper bounds, lower
  // endpoint for the lower bound).
  int alpha_thresh = 256;
  // Dataset size, used only by the asymptotic kinds.
  std::int64_t n = 0;
};

// Wraps a base curve into the curve of the subsampled mechanism under the
// chosen bound. Integer-order values are memoized; fractional orders go
// through amplify_fractional.
RdpCurve subsample(const RdpCurve& base, double gamma, BoundKind kind,
                   const SubsampleOptions& options = {});

}  // namespace samplerdp
