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

#include "quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "boost/math/quadrature/gauss_kronrod.hpp"

namespace samplerdp {

namespace {

std::vector<double> panel_edges(double a, double b,
                                std::vector<double> breakpoints) {
  std::vector<double> edges;
  edges.push_back(a);
  std::sort(breakpoints.begin(), breakpoints.end());
  for (double x : breakpoints) {
    if (x > a && x < b) edges.push_back(x);
  }
  edges.push_back(b);
  return edges;
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     std::vector<double> breakpoints, double tol_rel,
                     double tol_abs) {
  using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
  const std::vector<double> edges = panel_edges(a, b, std::move(breakpoints));

  QuadResult out;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double err = 0;
    out.value += gk::integrate(f, edges[i], edges[i + 1], /*max_depth=*/22,
                               tol_rel, &err);
    out.abs_error += err;
  }
  out.converged =
      out.abs_error <= tol_rel * std::max(std::abs(out.value), 1e-30) + tol_abs;
  return out;
}

namespace {

struct LogSimpsonCtx {
  const std::function<double(double)>* log_f;
  double tol;
  double prune_below = -kInf;
  bool converged = true;
  std::int64_t nodes = 0;
  static constexpr std::int64_t kMaxNodes = 40000000;
};

double log_simpson(double a, double fa, double fm, double b, double fb) {
  constexpr double kLog4 = 1.3862943611198906;
  const double width = b - a;
  if (width <= 0) return -kInf;
  const double body[3] = {fa, kLog4 + fm, fb};
  return std::log(width / 6.0) +
         log_sum_exp(std::span<const double>(body, 3));
}

double log_adaptive(LogSimpsonCtx& ctx, double a, double fa, double m,
                    double fm, double b, double fb, double whole, int depth) {
  ++ctx.nodes;
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = (*ctx.log_f)(lm);
  const double frm = (*ctx.log_f)(rm);
  const double left = log_simpson(a, fa, flm, m, fm);
  const double right = log_simpson(m, fm, frm, b, fb);
  const double refined = log_add_exp(left, right);

  if (refined == -kInf && whole == -kInf) return -kInf;
  // Panels this far below the peak cannot move the total; refining them
  // would burn the node budget on irrelevant tails.
  if (refined < ctx.prune_below && whole < ctx.prune_below) return refined;
  const double diff = (refined == -kInf || whole == -kInf)
                          ? kInf
                          : std::abs(refined - whole);
  if (diff < 15.0 * ctx.tol) return refined;
  if (depth <= 0 || ctx.nodes > LogSimpsonCtx::kMaxNodes) {
    // Give up on this panel; keep the refined estimate but mark the result.
    if (diff > 1e3 * ctx.tol) ctx.converged = false;
    return refined;
  }
  return log_add_exp(
      log_adaptive(ctx, a, fa, lm, flm, m, fm, left, depth - 1),
      log_adaptive(ctx, m, fm, rm, frm, b, fb, right, depth - 1));
}

}  // namespace

LogQuadResult log_integrate(const std::function<double(double)>& log_f,
                            double a, double b,
                            std::vector<double> breakpoints, double tol,
                            double peak_hint) {
  const std::vector<double> edges = panel_edges(a, b, std::move(breakpoints));
  LogSimpsonCtx ctx{&log_f, tol};
  if (peak_hint < kInf) ctx.prune_below = peak_hint - 80.0;

  // Pre-split every panel so a narrow peak between coarse probe points
  // cannot be silently skipped by the first Simpson estimate.
  constexpr int kInitialSplits = 32;
  double total = -kInf;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i];
    const double hi = edges[i + 1];
    const double step = (hi - lo) / kInitialSplits;
    for (int k = 0; k < kInitialSplits; ++k) {
      const double a0 = lo + k * step;
      const double b0 = (k == kInitialSplits - 1) ? hi : a0 + step;
      const double m0 = 0.5 * (a0 + b0);
      const double fa = log_f(a0);
      const double fm = log_f(m0);
      const double fb = log_f(b0);
      const double whole = log_simpson(a0, fa, fm, b0, fb);
      total = log_add_exp(
          total, log_adaptive(ctx, a0, fa, m0, fm, b0, fb, whole, 48));
    }
  }
  return {total, ctx.converged};
}

void extend_window(const std::function<double(double)>& log_f, double& lo,
                   double& hi, double drop_nats) {
  constexpr int kScanPoints = 257;
  constexpr int kMaxRounds = 80;
  constexpr double kNegligible = -1000.0;

  for (int round = 0; round < kMaxRounds; ++round) {
    double peak = -kInf;
    for (int i = 0; i < kScanPoints; ++i) {
      const double x = lo + (hi - lo) * i / (kScanPoints - 1);
      peak = std::max(peak, log_f(x));
    }
    const double cut = std::max(peak - drop_nats, kNegligible);
    const bool grow_lo = log_f(lo) > cut;
    const bool grow_hi = log_f(hi) > cut;
    if (!grow_lo && !grow_hi) return;
    const double span = hi - lo;
    if (grow_lo) lo -= 0.75 * span;
    if (grow_hi) hi += 0.75 * span;
  }
}

}  // namespace samplerdp
