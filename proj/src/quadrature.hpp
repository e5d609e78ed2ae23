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
#include <vector>

#include "numerics.hpp"

namespace samplerdp {

struct QuadResult {
  double value = 0;
  double abs_error = 0;
  bool converged = false;
};

// Adaptive Gauss-Kronrod integration of f over [a, b], split beforehand at
// the given interior breakpoints (kinks). Converged when the summed error
// estimate is below tol_rel * max(|I|, tiny) + tol_abs.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     std::vector<double> breakpoints, double tol_rel,
                     double tol_abs = 1e-300);

struct LogQuadResult {
  double log_value = -kInf;  // log of the (nonnegative) integral
  bool converged = false;
};

// Adaptive Simpson quadrature of exp(log_f) carried out entirely in the log
// domain: panel values are combined by log-sum-exp, so integrals far beyond
// double range stay representable. tol is a relative tolerance (absolute in
// log space). When peak_hint (the max of log_f over [a, b]) is supplied,
// panels more than ~150 nats below it are accepted without refinement; they
// cannot move the total.
LogQuadResult log_integrate(const std::function<double(double)>& log_f,
                            double a, double b,
                            std::vector<double> breakpoints, double tol,
                            double peak_hint = kInf);

// Expands [lo, hi] until the log-integrand at both edges sits at least
// `drop_nats` below its maximum over the window (or the edge value is
// negligibly small in absolute terms). Catches integrands whose mass the
// alpha power pushed far into a tail.
void extend_window(const std::function<double(double)>& log_f, double& lo,
                   double& hi, double drop_nats = 70.0);

}  // namespace samplerdp
