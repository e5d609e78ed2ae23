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

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "json.hpp"
#include "numerics.hpp"

namespace samplerdp {

struct BoundInterval {
  double lo = 0;
  double hi = 0;
};

// Everything needed to assemble a privacy curve. `eval` is the RDP parameter
// as a function of the order alpha > 1; `eval_interval` is optional and
// defaults to the point interval [eval, eval].
struct RdpCurveInit {
  std::function<double(double)> eval;
  double eps_inf = kInf;
  std::optional<double> eps_kl;
  bool tight = false;
  bool self_consistent = false;
  std::string identity;
  nlohmann::json spec;  // null => curve cannot be serialized
  std::function<BoundInterval(double)> eval_interval;
};

// A mechanism's Renyi-DP curve: eps(alpha) for alpha in (1, inf], together
// with the pure-DP level eps(inf), the KL level (alpha -> 1 limit, when
// known) and the tightness/self-consistency flags the subsampling bounds
// condition on. Immutable after construction; cheap to copy and safe to
// evaluate concurrently.
class RdpCurve {
 public:
  RdpCurve() = default;
  explicit RdpCurve(RdpCurveInit init);

  // RDP parameter at order alpha. Requires alpha > 1; alpha == +inf returns
  // eps_inf().
  double operator()(double alpha) const;

  // [lower, upper] enclosure of the curve value; a point interval except for
  // subsampled curves evaluated above their exact-summation threshold.
  BoundInterval eval_interval(double alpha) const;

  double eps_inf() const { return eps_inf_; }
  std::optional<double> eps_kl() const { return eps_kl_; }
  bool is_tight() const { return tight_; }
  bool is_self_consistent() const { return self_consistent_; }
  const std::string& identity() const { return identity_; }

  // Mechanism spec object ({"kind": ..., parameters...}); null when the
  // curve was built from non-serializable callables.
  const nlohmann::json& spec() const { return spec_; }
  bool serializable() const { return !spec_.is_null(); }

 private:
  std::function<double(double)> eval_;
  std::function<BoundInterval(double)> eval_interval_;
  double eps_inf_ = kInf;
  std::optional<double> eps_kl_;
  bool tight_ = false;
  bool self_consistent_ = false;
  std::string identity_;
  nlohmann::json spec_;
};

// Catalog constructors. Sensitivity is normalized to 1 throughout; callers
// fold the sensitivity into the noise parameter upstream.
RdpCurve gaussian_rdp(double sigma);
RdpCurve laplace_rdp(double b);
RdpCurve randresp_rdp(double p);
RdpCurve pure_dp_rdp(double eps);

// Exponential-family mechanism with parameter-difference bound `delta_param`,
// local Lipschitz constant `lipschitz(kappa)` and local smoothness
// `smoothness(kappa)` of the log-partition function, both nondecreasing in
// kappa and valid up to kappa_max. Either callable may return +inf to
// disable its branch. With `improved_lipschitz` the Lipschitz branch uses
// [B((alpha-1)*d) + B(d)]*d instead of 2*B(alpha*d)*d.
RdpCurve expfamily_rdp(double delta_param,
                       std::function<double(double)> lipschitz,
                       std::function<double(double)> smoothness,
                       double kappa_max, bool improved_lipschitz = true);

// Constant-coefficient variant; serializable. Pass kInf to disable a branch.
RdpCurve expfamily_rdp(double delta_param, double lipschitz, double smoothness,
                       double kappa_max, bool improved_lipschitz = true);

// Canonical 12-significant-digit rendering used in identities and specs.
std::string format_param(double v);

}  // namespace samplerdp
