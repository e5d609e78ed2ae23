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
#include <unordered_map>
#include <vector>

#include "mechanisms.hpp"

namespace samplerdp {

struct PrivacyParams {
  double eps = 0;
  double delta = 0;
};

// Order-alpha RDP to (eps, delta)-DP:
// (eps_alpha + log(1/delta)/(alpha - 1), delta). alpha may be +inf.
PrivacyParams rdp_to_dp(double eps_alpha, double alpha, double delta);

struct ConversionResult {
  double value = 0;        // eps or delta, depending on the query
  double lambda_star = 0;  // minimizing CGF order
  bool infimum_limited = false;
};

struct ProjectionConfig {
  double lambda_min = 1e-4;
  double lambda_max = 1048576.0;  // 2^20
  int points = 512;
};

struct SolverConfig {
  double tol = 1e-10;                   // argument tolerance on lambda
  double lambda_cap = 1099511627776.0;  // 2^40
};

// The analytical moments accountant: a multiset of privacy curves with
// multiplicities whose total CGF is K(lambda) = sum_i count_i * lambda *
// eps_i(lambda + 1). Composition is amortized O(1) (identical identities
// merge); CGF queries are O(#unique mechanisms).
//
// Writes (compose, project) require exclusive access; all queries are const
// and may run concurrently against an unchanging ledger.
class CgfLedger {
 public:
  struct Entry {
    RdpCurve curve;
    std::int64_t count = 0;
  };

  CgfLedger() = default;

  // Adds `count` applications of the mechanism. Merges with an existing
  // entry of the same identity. Drops any active projection.
  void compose(const RdpCurve& curve, std::int64_t count = 1);

  // Total CGF at lambda > 0; the projected evaluator when project() ran.
  double cgf(double lambda) const;

  // Total CGF straight from the entries, ignoring any projection.
  double raw_cgf(double lambda) const;

  double eps_inf_total() const { return eps_inf_total_; }
  double eps_kl_total() const { return eps_kl_total_; }
  std::size_t unique_mechanisms() const { return entries_.size(); }
  std::int64_t total_count() const { return total_count_; }
  const std::vector<Entry>& entries() const { return entries_; }

  // Smallest eps such that the ledger certifies (eps, delta)-DP, together
  // with the minimizing lambda. The answer is the better of the CGF track
  // and the pure-DP track. `infimum_limited` marks degenerate ledgers whose
  // objective keeps improving up to the lambda cap.
  ConversionResult eps_from_delta(double delta, double tol = 1e-10) const;

  // Smallest certified delta for a given eps, clamped to [0, 1].
  ConversionResult delta_from_eps(double eps, double tol = 1e-10) const;

  // Replaces the CGF evaluator with the lower convex envelope of its samples
  // on a log-spaced grid, anchored through the origin. The projected CGF is
  // convex, zero at zero, below the raw CGF at the grid points, and has
  // nondecreasing K(lambda)/lambda.
  void project(const ProjectionConfig& config = {});
  bool is_projected() const { return !proj_x_.empty(); }

  SolverConfig solver;

 private:
  double projected_cgf(double lambda) const;

  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  double eps_inf_total_ = 0;
  double eps_kl_total_ = 0;
  std::int64_t total_count_ = 0;
  // Projection: piecewise-linear convex minorant (xs increasing, xs[0]==0).
  std::vector<double> proj_x_, proj_y_;
  double proj_pole_ = kInf;  // smallest grid lambda with infinite raw CGF
};

}  // namespace samplerdp
