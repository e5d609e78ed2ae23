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

#include <span>
#include <stdexcept>
#include <vector>

#include "amplification.hpp"
#include "quadrature.hpp"

namespace samplerdp {

// Raised when adaptive quadrature cannot reach its error target; the caller
// decides whether to abort or mark the affected row.
class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what)
      : std::runtime_error(what) {}
};

// Worst-case output pair of a mechanism: q is the law on the all-identical
// dataset, p the law with one point replaced. The subsampled output law is
// the mixture (1-gamma) q + gamma p.
struct WorstCasePair {
  std::function<double(double)> log_q;
  std::function<double(double)> log_p;
  // log(p(x)/q(x)) in analytically cancelled form. Computing the ratio as a
  // difference of the log densities loses all precision near the crossing
  // point and makes the quadrature integrands non-smooth there.
  std::function<double(double)> log_ratio;
  double seed_lo = 0;               // window seeds (distribution centers)
  double seed_hi = 1;
  double scale = 1;                 // window unit (sigma equivalent)
  std::vector<double> breakpoints;  // density kinks
  bool discrete = false;
  double q1 = 0, q0 = 0;            // 2-point pmf on {1, 0} when discrete
  double p1 = 0, p0 = 0;
};

WorstCasePair gaussian_pair(double sigma);
WorstCasePair laplace_pair(double b);
WorstCasePair randresp_pair(double p);

// Dispatch on a mechanism spec object; throws std::invalid_argument for
// kinds without a defined worst-case pair.
WorstCasePair worst_case_pair(const nlohmann::json& mech_spec);

// True Renyi divergence D_alpha((1-gamma) q + gamma p || q) by adaptive
// quadrature (exact summation for discrete pairs). The integrand is
// assembled in log space; integrals beyond double range switch to a
// log-domain accumulation. Throws QuadratureError on non-convergence.
double oracle_renyi(const WorstCasePair& pair, double gamma, double alpha,
                    double tol = 1e-12);

// E_q[(p/q - 1)^order] for even order (the signed moment identity), or the
// absolute-value variant E_q[|p/q - 1|^order] for any order >= 1.
double oracle_chi(const WorstCasePair& pair, std::int64_t order,
                  double tol = 1e-12, bool absolute = false);

struct BoundRow {
  double alpha = 0;
  double lower = 0;
  double oracle = 0;
  double upper_general = 0;
  double upper_tight = 0;     // NaN when the base curve does not qualify
  double asymptotic_bad = 0;  // NaN for non-Gaussian mechanisms
  double asymptotic_good = 0;
  bool pass = false;
  bool oracle_ok = false;
};

struct SandwichOptions {
  double quad_tol = 1e-12;
  std::int64_t n = 0;  // dataset size for asymptotics; 0 => round(100/gamma)
};

// Per-alpha sandwich check lower <= oracle <= upper_general for a catalog
// mechanism spec ({gaussian, laplace, randresp}). Quadrature failures mark
// the row instead of aborting the sweep. Comparisons carry a slack of 1e-8
// relative + 1e-12 absolute: the lower bound equals the oracle analytically
// for these pairs, so the raw inequality is an equality up to roundoff.
std::vector<BoundRow> sandwich_report(const nlohmann::json& mech_spec,
                                      double gamma,
                                      std::span<const double> alphas,
                                      const SandwichOptions& options = {});

}  // namespace samplerdp
