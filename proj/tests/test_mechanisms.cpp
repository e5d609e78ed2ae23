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
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"

namespace samplerdp {
namespace {

std::vector<double> log_alpha_grid(double lo, double hi, int points) {
  std::vector<double> out;
  for (int i = 0; i < points; ++i) {
    out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
  }
  return out;
}

TEST_CASE("gaussian curve") {
  const RdpCurve g = gaussian_rdp(5.0);
  CHECK(g(2.0) == doctest::Approx(0.04).epsilon(1e-15));
  CHECK(g.eps_inf() == kInf);
  REQUIRE(g.eps_kl().has_value());
  CHECK(*g.eps_kl() == doctest::Approx(0.02).epsilon(1e-15));
  CHECK(g.is_tight());
  CHECK(g.is_self_consistent());

  const RdpCurve unit = gaussian_rdp(1.0);
  CHECK(unit(2.0) == doctest::Approx(1.0).epsilon(1e-15));

  // eval(alpha) * 2 sigma^2 == alpha (up to one rounding of 1/(2 sigma^2)).
  for (double alpha : log_alpha_grid(1.0001, 1e6, 50)) {
    CHECK(g(alpha) * 50.0 == doctest::Approx(alpha).epsilon(2e-16));
  }
  CHECK_THROWS_AS(gaussian_rdp(0.0), std::invalid_argument);
  CHECK_THROWS_AS(g(1.0), std::invalid_argument);
}

TEST_CASE("laplace curve") {
  const RdpCurve lap = laplace_rdp(2.0);
  // Direct long-double evaluation of the order-2 value.
  const long double expected2 =
      std::log((2.0L / 3.0L) * std::exp(0.5L) + (1.0L / 3.0L) * std::exp(-1.0L));
  CHECK(lap(2.0) ==
        doctest::Approx(static_cast<double>(expected2)).epsilon(1e-13));
  CHECK(lap(2.0) == doctest::Approx(0.20030).epsilon(1e-4));

  CHECK(laplace_rdp(0.5).eps_inf() == doctest::Approx(2.0).epsilon(1e-15));

  // Near alpha = 1 the curve approaches the KL divergence
  // KL(Lap(0,b) || Lap(1,b)) = 1/b + exp(-1/b) - 1.
  const double kl = 0.5 + std::exp(-0.5) - 1.0;
  CHECK(lap(1.0000001) == doctest::Approx(kl).epsilon(1e-3));
  REQUIRE(lap.eps_kl().has_value());
  CHECK(*lap.eps_kl() == doctest::Approx(kl).epsilon(1e-6));

  // Generic formula vs the order-2 simplification for random scales.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int i = 0; i < 50; ++i) {
    const double b = scale(rng);
    const double special =
        std::log((2.0 / 3.0) * std::exp(1.0 / b) + (1.0 / 3.0) * std::exp(-2.0 / b));
    CHECK(laplace_rdp(b)(2.0) == doctest::Approx(special).epsilon(1e-12));
  }

  // Large alpha stays finite and approaches 1/b without overflow.
  CHECK(lap(1e7) == doctest::Approx(0.5).epsilon(1e-5));
  CHECK_THROWS_AS(laplace_rdp(-1.0), std::invalid_argument);
}

TEST_CASE("randomized response curve") {
  const RdpCurve rr = randresp_rdp(0.6);
  const long double expected2 = std::log(0.36L / 0.4L + 0.16L / 0.6L);
  CHECK(rr(2.0) ==
        doctest::Approx(static_cast<double>(expected2)).epsilon(1e-13));
  CHECK(rr(2.0) == doctest::Approx(0.15415).epsilon(1e-4));

  const RdpCurve fair = randresp_rdp(0.5);
  for (double alpha : {1.5, 2.0, 64.0, 1e6}) {
    CHECK(fair(alpha) == 0.0);
  }

  CHECK(randresp_rdp(0.9).eps_inf() ==
        doctest::Approx(std::log(9.0)).epsilon(1e-14));
  CHECK(randresp_rdp(0.9).eps_inf() == doctest::Approx(2.1972).epsilon(1e-4));

  // KL(Bern(p) || Bern(1-p)) = (2p - 1) log(p / (1-p)).
  const double kl = 0.2 * std::log(1.5);
  REQUIRE(rr.eps_kl().has_value());
  CHECK(*rr.eps_kl() == doctest::Approx(kl).epsilon(1e-6));

  CHECK_THROWS_AS(randresp_rdp(0.0), std::invalid_argument);
  CHECK_THROWS_AS(randresp_rdp(1.0), std::invalid_argument);
}

TEST_CASE("pure-DP constant curve") {
  const RdpCurve zero = pure_dp_rdp(0.0);
  CHECK(zero(7.0) == 0.0);
  CHECK(zero.eps_inf() == 0.0);

  const RdpCurve half = pure_dp_rdp(0.5);
  CHECK(half(10.0) == 0.5);
  CHECK(pure_dp_rdp(2.0).eps_inf() == 2.0);
  CHECK_FALSE(half.is_tight());
  CHECK_THROWS_AS(pure_dp_rdp(-0.1), std::invalid_argument);
}

TEST_CASE("exponential-family curve") {
  // Constant smoothness with the Lipschitz branch disabled reproduces the
  // Gaussian shape eps(alpha) = alpha L / 2 up to the order cap.
  const double sigma = 3.0;
  const RdpCurve gaussish = expfamily_rdp(1.0, kInf, 1.0 / (sigma * sigma), 32.0);
  for (double alpha : {1.5, 2.0, 10.0, 33.0}) {
    CHECK(gaussish(alpha) ==
          doctest::Approx(alpha / (2 * sigma * sigma)).epsilon(1e-14));
  }
  CHECK(gaussish(33.0 + 1e-9) == kInf);
  CHECK(gaussish.eps_inf() == kInf);

  // Zero parameter difference: identical output laws.
  const RdpCurve degenerate = expfamily_rdp(0.0, 1.0, 1.0, 4.0);
  CHECK(degenerate(5.0) == 0.0);
  CHECK(degenerate.eps_inf() == 0.0);

  // Constant Lipschitz branch with smoothness disabled: 2 B delta.
  const RdpCurve lipschitz_only = expfamily_rdp(1.0, 0.7, kInf, 8.0);
  CHECK(lipschitz_only(2.0) == doctest::Approx(1.4).epsilon(1e-14));

  // Improved and basic forms coincide for constant coefficients.
  const RdpCurve basic = expfamily_rdp(1.0, 0.7, kInf, 8.0, false);
  CHECK(basic(2.0) == doctest::Approx(lipschitz_only(2.0)).epsilon(1e-14));

  // Unbounded kappa with a constant Lipschitz coefficient has a finite
  // pure-DP ceiling.
  const RdpCurve flat = expfamily_rdp(1.0, 0.7, kInf, kInf);
  CHECK(flat.eps_inf() == doctest::Approx(1.4).epsilon(1e-14));

  CHECK_THROWS_AS(expfamily_rdp(2.0, 1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("catalog curves are nondecreasing in alpha") {
  const std::vector<RdpCurve> catalog{
      gaussian_rdp(5.0),   gaussian_rdp(0.5),  laplace_rdp(2.0),
      laplace_rdp(0.5),    randresp_rdp(0.6),  randresp_rdp(0.9),
      pure_dp_rdp(0.5),    expfamily_rdp(1.0, 0.7, 0.3, 64.0),
  };
  for (const RdpCurve& curve : catalog) {
    double prev = 0;
    bool first = true;
    for (double alpha : log_alpha_grid(1.000001, 1e6, 50)) {
      const double v = curve(alpha);
      CHECK(v <= curve.eps_inf() * (1 + 1e-12) + 1e-12);
      if (!first) {
        if (std::isinf(prev)) {
          CHECK(v == prev);
        } else {
          CHECK(v >= prev - 1e-12 * std::max(1.0, std::abs(prev)));
        }
      }
      prev = v;
      first = false;
    }
  }
}

TEST_CASE("lambda * eps(lambda + 1) is midpoint convex") {
  const std::vector<RdpCurve> catalog{gaussian_rdp(2.0), laplace_rdp(1.5),
                                      randresp_rdp(0.7), pure_dp_rdp(0.4)};
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> pick(-3.0, 5.0);
  for (const RdpCurve& curve : catalog) {
    auto cgf = [&curve](double lambda) { return lambda * curve(lambda + 1); };
    for (int trial = 0; trial < 200; ++trial) {
      const double l1 = std::exp(pick(rng));
      const double l2 = std::exp(pick(rng));
      const double mid = 0.5 * (l1 + l2);
      const double lhs = cgf(mid);
      const double rhs = 0.5 * (cgf(l1) + cgf(l2));
      CHECK(lhs <= rhs + 1e-9 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("curves are continuous across internal branch switches") {
  // The catalog evaluators change formula near alpha = 1 (series vs
  // log-sum-exp); values must agree across the seam.
  for (double b : {0.3, 2.0, 7.0}) {
    const RdpCurve lap = laplace_rdp(b);
    const double below = lap(1.0 + 1e-3 * (1 - 1e-9));
    const double above = lap(1.0 + 1e-3 * (1 + 1e-9));
    CHECK(below == doctest::Approx(above).epsilon(1e-9));
  }
  for (double p : {0.6, 0.9}) {
    const RdpCurve rr = randresp_rdp(p);
    const double seam = 1e-3 / std::log(p / (1 - p));
    const double below = rr(1.0 + seam * (1 - 1e-9));
    const double above = rr(1.0 + seam * (1 + 1e-9));
    CHECK(below == doctest::Approx(above).epsilon(1e-9));
  }
}

TEST_CASE("identities merge repeated registrations") {
  CHECK(gaussian_rdp(5.0).identity() == gaussian_rdp(5.0).identity());
  CHECK(gaussian_rdp(5.0).identity() != gaussian_rdp(5.0000001).identity());
  // 12-significant-digit rounding folds sub-resolution differences.
  CHECK(gaussian_rdp(5.0).identity() == gaussian_rdp(5.0 + 1e-14).identity());
  CHECK(laplace_rdp(2.0).identity() != gaussian_rdp(2.0).identity());
}

}  // namespace
}  // namespace samplerdp
