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

#include "samplerdp.h"

#include <cstring>
#include <new>
#include <string>

#include "baselines.hpp"
#include "serialization.hpp"
#include "verifier.hpp"

struct srdp_curve {
  samplerdp::RdpCurve curve;
};

struct srdp_ledger {
  samplerdp::CgfLedger ledger;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : "unknown error"; }

template <typename Fn>
srdp_status wrap(Fn&& fn) noexcept {
  try {
    return fn();
  } catch (const samplerdp::QuadratureError& e) {
    set_error(e.what());
    return SRDP_ERR_NUMERIC;
  } catch (const nlohmann::json::parse_error& e) {
    set_error(e.what());
    return SRDP_ERR_PARSE;
  } catch (const nlohmann::json::exception& e) {
    set_error(e.what());
    return SRDP_ERR_PARSE;
  } catch (const std::bad_alloc& e) {
    set_error(e.what());
    return SRDP_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SRDP_ERR_INVALID_ARGUMENT;
  }
}

srdp_status arg_error(const char* what) {
  set_error(what);
  return SRDP_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

srdp_status make_curve(samplerdp::RdpCurve curve, srdp_curve** out) {
  *out = new srdp_curve{std::move(curve)};
  return SRDP_OK;
}

std::optional<samplerdp::BoundKind> to_kind(srdp_bound_kind kind) {
  switch (kind) {
    case SRDP_BOUND_GENERAL: return samplerdp::BoundKind::kGeneral;
    case SRDP_BOUND_TIGHT: return samplerdp::BoundKind::kTight;
    case SRDP_BOUND_LOWER: return samplerdp::BoundKind::kLower;
    case SRDP_BOUND_PUREDP_FORM: return samplerdp::BoundKind::kPureDpForm;
    case SRDP_BOUND_ASYMPTOTIC_BAD: return samplerdp::BoundKind::kAsymptoticBad;
    case SRDP_BOUND_ASYMPTOTIC_GOOD: return samplerdp::BoundKind::kAsymptoticGood;
  }
  return std::nullopt;
}

}  // namespace

extern "C" {

const char* srdp_version(void) { return "1.0.0"; }

const char* srdp_last_error(void) { return g_last_error.c_str(); }

void srdp_string_free(char* s) { delete[] s; }

srdp_status srdp_curve_gaussian(double sigma, srdp_curve** out) {
  if (!out) return arg_error("out must not be null");
  return wrap([&] { return make_curve(samplerdp::gaussian_rdp(sigma), out); });
}

srdp_status srdp_curve_laplace(double b, srdp_curve** out) {
  if (!out) return arg_error("out must not be null");
  return wrap([&] { return make_curve(samplerdp::laplace_rdp(b), out); });
}

srdp_status srdp_curve_randresp(double p, srdp_curve** out) {
  if (!out) return arg_error("out must not be null");
  return wrap([&] { return make_curve(samplerdp::randresp_rdp(p), out); });
}

srdp_status srdp_curve_puredp(double eps, srdp_curve** out) {
  if (!out) return arg_error("out must not be null");
  return wrap([&] { return make_curve(samplerdp::pure_dp_rdp(eps), out); });
}

srdp_status srdp_curve_expfamily(double delta_param, double lipschitz,
                                 double smoothness, double kappa_max,
                                 int improved_lipschitz, srdp_curve** out) {
  if (!out) return arg_error("out must not be null");
  return wrap([&] {
    return make_curve(
        samplerdp::expfamily_rdp(delta_param, lipschitz, smoothness, kappa_max,
                                 improved_lipschitz != 0),
        out);
  });
}

srdp_status srdp_curve_from_json(const char* json_spec, srdp_curve** out) {
  if (!out || !json_spec) return arg_error("json_spec/out must not be null");
  return wrap([&] {
    const nlohmann::json spec = nlohmann::json::parse(json_spec);
    return make_curve(samplerdp::curve_from_json(spec), out);
  });
}

srdp_status srdp_curve_subsample(const srdp_curve* base, double gamma,
                                 srdp_bound_kind kind, int alpha_thresh,
                                 int64_t n, srdp_curve** out) {
  if (!base || !out) return arg_error("base/out must not be null");
  const auto k = to_kind(kind);
  if (!k) return arg_error("unknown bound kind");
  return wrap([&] {
    samplerdp::SubsampleOptions options;
    if (alpha_thresh > 0) options.alpha_thresh = alpha_thresh;
    options.n = n;
    return make_curve(samplerdp::subsample(base->curve, gamma, *k, options),
                      out);
  });
}

srdp_status srdp_curve_eval(const srdp_curve* curve, double alpha, double* out) {
  if (!curve || !out) return arg_error("curve/out must not be null");
  return wrap([&] {
    *out = curve->curve(alpha);
    return SRDP_OK;
  });
}

srdp_status srdp_curve_eval_interval(const srdp_curve* curve, double alpha,
                                     double* lo, double* hi) {
  if (!curve || !lo || !hi) return arg_error("curve/lo/hi must not be null");
  return wrap([&] {
    const samplerdp::BoundInterval iv = curve->curve.eval_interval(alpha);
    *lo = iv.lo;
    *hi = iv.hi;
    return SRDP_OK;
  });
}

srdp_status srdp_curve_eps_inf(const srdp_curve* curve, double* out) {
  if (!curve || !out) return arg_error("curve/out must not be null");
  *out = curve->curve.eps_inf();
  return SRDP_OK;
}

srdp_status srdp_curve_eps_kl(const srdp_curve* curve, double* out) {
  if (!curve || !out) return arg_error("curve/out must not be null");
  const auto kl = curve->curve.eps_kl();
  if (!kl) {
    set_error("curve has no KL level");
    return SRDP_ERR_UNSUPPORTED;
  }
  *out = *kl;
  return SRDP_OK;
}

int srdp_curve_is_tight(const srdp_curve* curve) {
  return curve && curve->curve.is_tight() ? 1 : 0;
}

int srdp_curve_is_self_consistent(const srdp_curve* curve) {
  return curve && curve->curve.is_self_consistent() ? 1 : 0;
}

srdp_status srdp_curve_identity(const srdp_curve* curve, char** out) {
  if (!curve || !out) return arg_error("curve/out must not be null");
  *out = dup_string(curve->curve.identity());
  return SRDP_OK;
}

srdp_status srdp_curve_to_json(const srdp_curve* curve, char** out) {
  if (!curve || !out) return arg_error("curve/out must not be null");
  if (!curve->curve.serializable()) {
    set_error("curve is not serializable");
    return SRDP_ERR_UNSUPPORTED;
  }
  return wrap([&] {
    *out = dup_string(curve->curve.spec().dump());
    return SRDP_OK;
  });
}

void srdp_curve_free(srdp_curve* curve) { delete curve; }

srdp_status srdp_amplify_general(const srdp_curve* base, double gamma,
                                 int64_t alpha, double* out) {
  if (!base || !out) return arg_error("base/out must not be null");
  return wrap([&] {
    *out = samplerdp::amplify_general(base->curve, gamma, alpha);
    return SRDP_OK;
  });
}

srdp_status srdp_amplify_tight(const srdp_curve* base, double gamma,
                               int64_t alpha, double* out) {
  if (!base || !out) return arg_error("base/out must not be null");
  return wrap([&] {
    *out = samplerdp::amplify_tight(base->curve, gamma, alpha);
    return SRDP_OK;
  });
}

srdp_status srdp_amplify_lower(const srdp_curve* base, double gamma,
                               int64_t alpha, double* out) {
  if (!base || !out) return arg_error("base/out must not be null");
  return wrap([&] {
    *out = samplerdp::amplify_lower(base->curve, gamma, alpha);
    return SRDP_OK;
  });
}

srdp_status srdp_amplify_puredp_form(const srdp_curve* base, double gamma,
                                     double alpha, double* out) {
  if (!base || !out) return arg_error("base/out must not be null");
  return wrap([&] {
    *out = samplerdp::amplify_puredp_form(base->curve, gamma, alpha);
    return SRDP_OK;
  });
}

srdp_status srdp_approx_general_bound(const srdp_curve* base, double gamma,
                                      int64_t alpha, double* lo, double* hi) {
  if (!base || !lo || !hi) return arg_error("base/lo/hi must not be null");
  return wrap([&] {
    const samplerdp::BoundInterval iv =
        samplerdp::approx_general_bound(base->curve, gamma, alpha);
    *lo = iv.lo;
    *hi = iv.hi;
    return SRDP_OK;
  });
}

srdp_status srdp_asymptotic_gaussian(double sigma, double gamma, int64_t n,
                                     double alpha, int bad_case, double* out) {
  if (!out) return arg_error("out must not be null");
  return wrap([&] {
    *out = samplerdp::asymptotic_gaussian(
        sigma, gamma, n, alpha,
        bad_case ? samplerdp::AsymptoticCase::kBad
                 : samplerdp::AsymptoticCase::kGood);
    return SRDP_OK;
  });
}

srdp_status srdp_ledger_create(srdp_ledger** out) {
  if (!out) return arg_error("out must not be null");
  *out = new srdp_ledger();
  return SRDP_OK;
}

srdp_status srdp_ledger_compose(srdp_ledger* ledger, const srdp_curve* curve,
                                int64_t count) {
  if (!ledger || !curve) return arg_error("ledger/curve must not be null");
  return wrap([&] {
    ledger->ledger.compose(curve->curve, count);
    return SRDP_OK;
  });
}

srdp_status srdp_ledger_cgf(const srdp_ledger* ledger, double lambda,
                            double* out) {
  if (!ledger || !out) return arg_error("ledger/out must not be null");
  return wrap([&] {
    *out = ledger->ledger.cgf(lambda);
    return SRDP_OK;
  });
}

srdp_status srdp_ledger_eps_inf_total(const srdp_ledger* ledger, double* out) {
  if (!ledger || !out) return arg_error("ledger/out must not be null");
  *out = ledger->ledger.eps_inf_total();
  return SRDP_OK;
}

srdp_status srdp_ledger_eps_kl_total(const srdp_ledger* ledger, double* out) {
  if (!ledger || !out) return arg_error("ledger/out must not be null");
  *out = ledger->ledger.eps_kl_total();
  return SRDP_OK;
}

srdp_status srdp_ledger_unique_count(const srdp_ledger* ledger, size_t* out) {
  if (!ledger || !out) return arg_error("ledger/out must not be null");
  *out = ledger->ledger.unique_mechanisms();
  return SRDP_OK;
}

srdp_status srdp_ledger_total_count(const srdp_ledger* ledger, int64_t* out) {
  if (!ledger || !out) return arg_error("ledger/out must not be null");
  *out = ledger->ledger.total_count();
  return SRDP_OK;
}

srdp_status srdp_rdp_to_dp(double eps_alpha, double alpha, double delta,
                           double* eps_out) {
  if (!eps_out) return arg_error("eps_out must not be null");
  return wrap([&] {
    *eps_out = samplerdp::rdp_to_dp(eps_alpha, alpha, delta).eps;
    return SRDP_OK;
  });
}

srdp_status srdp_ledger_eps_from_delta(const srdp_ledger* ledger, double delta,
                                       double tol, srdp_conversion* out) {
  if (!ledger || !out) return arg_error("ledger/out must not be null");
  return wrap([&] {
    const samplerdp::ConversionResult r =
        ledger->ledger.eps_from_delta(delta, tol > 0 ? tol : 1e-10);
    *out = {r.value, r.lambda_star, r.infimum_limited ? 1 : 0};
    return SRDP_OK;
  });
}

srdp_status srdp_ledger_delta_from_eps(const srdp_ledger* ledger, double eps,
                                       double tol, srdp_conversion* out) {
  if (!ledger || !out) return arg_error("ledger/out must not be null");
  return wrap([&] {
    const samplerdp::ConversionResult r =
        ledger->ledger.delta_from_eps(eps, tol > 0 ? tol : 1e-10);
    *out = {r.value, r.lambda_star, r.infimum_limited ? 1 : 0};
    return SRDP_OK;
  });
}

srdp_status srdp_ledger_project(srdp_ledger* ledger, double lambda_min,
                                double lambda_max, int points) {
  if (!ledger) return arg_error("ledger must not be null");
  return wrap([&] {
    samplerdp::ProjectionConfig config;
    if (lambda_min > 0) config.lambda_min = lambda_min;
    if (lambda_max > 0) config.lambda_max = lambda_max;
    if (points > 0) config.points = points;
    ledger->ledger.project(config);
    return SRDP_OK;
  });
}

srdp_status srdp_ledger_to_json(const srdp_ledger* ledger, char** out) {
  if (!ledger || !out) return arg_error("ledger/out must not be null");
  return wrap([&] {
    *out = dup_string(samplerdp::ledger_to_json(ledger->ledger).dump());
    return SRDP_OK;
  });
}

srdp_status srdp_ledger_from_json(const char* json, srdp_ledger** out) {
  if (!json || !out) return arg_error("json/out must not be null");
  return wrap([&] {
    const nlohmann::json doc = nlohmann::json::parse(json);
    auto* handle = new srdp_ledger();
    try {
      handle->ledger = samplerdp::ledger_from_json(doc);
    } catch (...) {
      delete handle;
      throw;
    }
    *out = handle;
    return SRDP_OK;
  });
}

void srdp_ledger_free(srdp_ledger* ledger) { delete ledger; }

srdp_status srdp_naive_compose(double eps, double delta, int64_t rounds,
                               double* eps_out, double* delta_out) {
  if (!eps_out || !delta_out) return arg_error("outputs must not be null");
  return wrap([&] {
    const samplerdp::PrivacyParams r =
        samplerdp::naive_compose({eps, delta}, rounds);
    *eps_out = r.eps;
    *delta_out = r.delta;
    return SRDP_OK;
  });
}

srdp_status srdp_strong_compose(double eps, double delta, int64_t rounds,
                                double delta_slack, double* eps_out,
                                double* delta_out) {
  if (!eps_out || !delta_out) return arg_error("outputs must not be null");
  return wrap([&] {
    const samplerdp::PrivacyParams r =
        samplerdp::strong_compose({eps, delta}, rounds, delta_slack);
    *eps_out = r.eps;
    *delta_out = r.delta;
    return SRDP_OK;
  });
}

srdp_status srdp_subsample_dp(double eps, double delta, double gamma,
                              double* eps_out, double* delta_out) {
  if (!eps_out || !delta_out) return arg_error("outputs must not be null");
  return wrap([&] {
    const samplerdp::PrivacyParams r =
        samplerdp::subsample_dp({eps, delta}, gamma);
    *eps_out = r.eps;
    *delta_out = r.delta;
    return SRDP_OK;
  });
}

srdp_status srdp_calibrated_strong_dp(const srdp_curve* base, double gamma,
                                      int64_t rounds, double target_delta,
                                      double* eps_out, int* feasible_out) {
  if (!base || !eps_out || !feasible_out) {
    return arg_error("base/outputs must not be null");
  }
  return wrap([&] {
    const samplerdp::CalibratedResult r =
        samplerdp::calibrated_strong_dp(base->curve, gamma, rounds, target_delta);
    *eps_out = r.eps;
    *feasible_out = r.feasible ? 1 : 0;
    return SRDP_OK;
  });
}

srdp_status srdp_calibrated_naive_dp(const srdp_curve* base, double gamma,
                                     int64_t rounds, double target_delta,
                                     double* eps_out, int* feasible_out) {
  if (!base || !eps_out || !feasible_out) {
    return arg_error("base/outputs must not be null");
  }
  return wrap([&] {
    const samplerdp::CalibratedResult r =
        samplerdp::calibrated_naive_dp(base->curve, gamma, rounds, target_delta);
    *eps_out = r.eps;
    *feasible_out = r.feasible ? 1 : 0;
    return SRDP_OK;
  });
}

srdp_status srdp_sandwich_report(const char* mech_json, double gamma,
                                 const double* alphas, size_t n_alphas,
                                 double quad_tol, int64_t n,
                                 srdp_bound_row* rows_out) {
  if (!mech_json || !alphas || !rows_out) {
    return arg_error("mech_json/alphas/rows_out must not be null");
  }
  return wrap([&] {
    const nlohmann::json spec = nlohmann::json::parse(mech_json);
    samplerdp::SandwichOptions options;
    if (quad_tol > 0) options.quad_tol = quad_tol;
    if (n > 0) options.n = n;
    const std::vector<samplerdp::BoundRow> rows = samplerdp::sandwich_report(
        spec, gamma, std::span<const double>(alphas, n_alphas), options);
    for (size_t i = 0; i < rows.size(); ++i) {
      const samplerdp::BoundRow& r = rows[i];
      rows_out[i] = {r.alpha,          r.lower,
                     r.oracle,         r.upper_general,
                     r.upper_tight,    r.asymptotic_bad,
                     r.asymptotic_good, r.pass ? 1 : 0,
                     r.oracle_ok ? 1 : 0};
    }
    return SRDP_OK;
  });
}

srdp_status srdp_oracle_renyi(const char* mech_json, double gamma, double alpha,
                              double quad_tol, double* out) {
  if (!mech_json || !out) return arg_error("mech_json/out must not be null");
  return wrap([&] {
    const nlohmann::json spec = nlohmann::json::parse(mech_json);
    const samplerdp::WorstCasePair pair = samplerdp::worst_case_pair(spec);
    *out = samplerdp::oracle_renyi(pair, gamma, alpha,
                                   quad_tol > 0 ? quad_tol : 1e-12);
    return SRDP_OK;
  });
}

srdp_status srdp_oracle_chi(const char* mech_json, int64_t order,
                            double quad_tol, int absolute, double* out) {
  if (!mech_json || !out) return arg_error("mech_json/out must not be null");
  return wrap([&] {
    const nlohmann::json spec = nlohmann::json::parse(mech_json);
    const samplerdp::WorstCasePair pair = samplerdp::worst_case_pair(spec);
    *out = samplerdp::oracle_chi(pair, order, quad_tol > 0 ? quad_tol : 1e-12,
                                 absolute != 0);
    return SRDP_OK;
  });
}

}  // extern "C"
