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

#include "mechanisms.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace samplerdp {

namespace {

// Two-point Richardson extrapolation of eval toward alpha = 1 from the right.
double kl_right_limit(const std::function<double(double)>& eval) {
  const double h = 1e-7;
  const double e1 = eval(1 + h);
  const double e2 = eval(1 + h / 2);
  return 2 * e2 - e1;
}

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

std::string format_param(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

RdpCurve::RdpCurve(RdpCurveInit init)
    : eval_(std::move(init.eval)),
      eval_interval_(std::move(init.eval_interval)),
      eps_inf_(init.eps_inf),
      eps_kl_(init.eps_kl),
      tight_(init.tight),
      self_consistent_(init.self_consistent),
      identity_(std::move(init.identity)),
      spec_(std::move(init.spec)) {
  require(static_cast<bool>(eval_), "RdpCurve: eval callable required");
}

double RdpCurve::operator()(double alpha) const {
  require(static_cast<bool>(eval_), "RdpCurve: empty curve");
  if (alpha == kInf) return eps_inf_;
  require(alpha > 1 && !std::isnan(alpha), "RdpCurve: alpha must be > 1");
  return eval_(alpha);
}

BoundInterval RdpCurve::eval_interval(double alpha) const {
  if (eval_interval_) {
    if (alpha == kInf) return {eps_inf_, eps_inf_};
    require(alpha > 1 && !std::isnan(alpha), "RdpCurve: alpha must be > 1");
    return eval_interval_(alpha);
  }
  const double v = (*this)(alpha);
  return {v, v};
}

RdpCurve gaussian_rdp(double sigma) {
  require(sigma > 0 && std::isfinite(sigma), "gaussian_rdp: sigma must be > 0");
  const double inv = 1.0 / (2.0 * sigma * sigma);
  RdpCurveInit init;
  init.eval = [inv](double alpha) { return alpha * inv; };
  init.eps_inf = kInf;
  init.eps_kl = inv;
  init.tight = true;
  init.self_consistent = true;
  init.identity = "gaussian(sigma=" + format_param(sigma) + ")";
  init.spec = {{"kind", "gaussian"}, {"sigma", sigma}};
  return RdpCurve(std::move(init));
}

RdpCurve laplace_rdp(double b) {
  require(b > 0 && std::isfinite(b), "laplace_rdp: scale must be > 0");
  auto eval = [b](double alpha) -> double {
    if (alpha == kInf) return 1.0 / b;
    const double h = alpha - 1;
    if (h < 1e-3) {
      // Near alpha = 1 the weighted sum is 1 + O(h); expand it to keep the
      // 1/h division exact.
      const double w = 2 * alpha - 1;
      const double excess = (alpha / w) * std::expm1(h / b) +
                            (h / w) * std::expm1(-alpha / b);
      return std::log1p(excess) / h;
    }
    const double t1 = std::log(alpha / (2 * alpha - 1)) + h / b;
    const double t2 = std::log(h / (2 * alpha - 1)) - alpha / b;
    return log_add_exp(t1, t2) / h;
  };
  RdpCurveInit init;
  init.eps_kl = kl_right_limit(eval);
  init.eval = std::move(eval);
  init.eps_inf = 1.0 / b;
  init.tight = true;
  init.self_consistent = false;
  init.identity = "laplace(b=" + format_param(b) + ")";
  init.spec = {{"kind", "laplace"}, {"b", b}};
  return RdpCurve(std::move(init));
}

RdpCurve randresp_rdp(double p) {
  require(p > 0 && p < 1, "randresp_rdp: p must lie in (0, 1)");
  const double r = std::log(p / (1 - p));
  auto eval = [p, r](double alpha) -> double {
    if (alpha == kInf) return std::abs(r);
    if (r == 0) return 0.0;
    const double h = alpha - 1;
    if (std::abs(h * r) < 1e-3) {
      const double excess = p * std::expm1(h * r) + (1 - p) * std::expm1(-h * r);
      return std::log1p(excess) / h;
    }
    const double t1 = std::log(p) + h * r;
    const double t2 = std::log1p(-p) - h * r;
    return log_add_exp(t1, t2) / h;
  };
  RdpCurveInit init;
  init.eps_kl = (r == 0) ? 0.0 : kl_right_limit(eval);
  init.eval = std::move(eval);
  init.eps_inf = std::abs(r);
  init.tight = true;
  init.self_consistent = false;
  init.identity = "randresp(p=" + format_param(p) + ")";
  init.spec = {{"kind", "randresp"}, {"p", p}};
  return RdpCurve(std::move(init));
}

RdpCurve pure_dp_rdp(double eps) {
  require(eps >= 0 && !std::isnan(eps), "pure_dp_rdp: eps must be >= 0");
  RdpCurveInit init;
  init.eval = [eps](double) { return eps; };
  init.eps_inf = eps;
  init.eps_kl = eps;
  init.tight = false;
  init.self_consistent = false;
  init.identity = "puredp(eps=" + format_param(eps) + ")";
  init.spec = {{"kind", "puredp"}, {"eps", eps}};
  return RdpCurve(std::move(init));
}

namespace {

RdpCurve make_expfamily(double d, std::function<double(double)> lip,
                        std::function<double(double)> smooth, double kappa_max,
                        bool improved, double eps_inf, std::string identity,
                        nlohmann::json spec) {
  require(d >= 0 && std::isfinite(d), "expfamily_rdp: delta_param must be >= 0");
  require(kappa_max > 0, "expfamily_rdp: kappa_max must be > 0");
  require(kappa_max >= d, "expfamily_rdp: kappa_max must be >= delta_param");

  const double alpha_cap = (d == 0) ? kInf : kappa_max / d + 1;
  auto eval = [d, lip, smooth, kappa_max, improved, alpha_cap](double alpha) -> double {
    if (d == 0) return 0.0;
    if (alpha > alpha_cap) return kInf;
    const double kappa = std::min(alpha * d, kappa_max);
    const double smooth_branch = alpha * smooth(kappa) * d * d / 2.0;
    double lip_branch;
    if (improved) {
      const double k1 = std::min((alpha - 1) * d, kappa_max);
      lip_branch = (lip(k1) + lip(d)) * d;
    } else {
      lip_branch = 2.0 * lip(kappa) * d;
    }
    return std::min(smooth_branch, lip_branch);
  };

  RdpCurveInit init;
  init.eps_inf = (d == 0) ? 0.0 : eps_inf;
  init.eps_kl = (d == 0) ? 0.0 : kl_right_limit(eval);
  init.eval = std::move(eval);
  init.tight = false;
  init.self_consistent = false;
  init.identity = std::move(identity);
  init.spec = std::move(spec);
  return RdpCurve(std::move(init));
}

}  // namespace

RdpCurve expfamily_rdp(double delta_param, std::function<double(double)> lipschitz,
                       std::function<double(double)> smoothness,
                       double kappa_max, bool improved_lipschitz) {
  require(static_cast<bool>(lipschitz) && static_cast<bool>(smoothness),
          "expfamily_rdp: coefficient callables required");
  std::string id = "expfamily(delta=" + format_param(delta_param) +
                   ",kappa_max=" + format_param(kappa_max) + ",custom)";
  // Pure-DP level unknowable for opaque coefficient callables; stay at +inf.
  return make_expfamily(delta_param, std::move(lipschitz), std::move(smoothness),
                        kappa_max, improved_lipschitz, kInf, std::move(id),
                        nlohmann::json());
}

RdpCurve expfamily_rdp(double delta_param, double lipschitz, double smoothness,
                       double kappa_max, bool improved_lipschitz) {
  require(lipschitz >= 0 && smoothness >= 0,
          "expfamily_rdp: coefficients must be >= 0");
  nlohmann::json spec = {{"kind", "expfamily"},
                         {"delta", delta_param},
                         {"improved_lipschitz", improved_lipschitz}};
  // JSON has no infinity; absent keys mean an unbounded value.
  if (std::isfinite(kappa_max)) spec["kappa_max"] = kappa_max;
  if (std::isfinite(lipschitz)) spec["lipschitz"] = lipschitz;
  if (std::isfinite(smoothness)) spec["smoothness"] = smoothness;
  std::string id = "expfamily(delta=" + format_param(delta_param) +
                   ",lipschitz=" + format_param(lipschitz) +
                   ",smoothness=" + format_param(smoothness) +
                   ",kappa_max=" + format_param(kappa_max) +
                   (improved_lipschitz ? "" : ",basic") + ")";
  // With an unbounded kappa range and a constant finite Lipschitz
  // coefficient the curve flattens at 2*B*delta as alpha -> inf.
  const double eps_inf = (kappa_max == kInf && std::isfinite(lipschitz))
                             ? 2.0 * lipschitz * delta_param
                             : kInf;
  RdpCurve curve = make_expfamily(
      delta_param, [lipschitz](double) { return lipschitz; },
      [smoothness](double) { return smoothness; }, kappa_max,
      improved_lipschitz, eps_inf, std::move(id), std::move(spec));
  return curve;
}

}  // namespace samplerdp
