/*
 * Copyright 2026 The samplerdp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * samplerdp — Renyi-differential-privacy accounting for subsampled
 * mechanisms.
 *
 * The library exposes privacy curves (a mechanism's RDP parameter as a
 * function of the order alpha), subsampling amplification bounds, a
 * symbolic CGF ledger with (eps, delta) conversions, classical composition
 * baselines, and a quadrature oracle that verifies the amplification
 * bounds sandwich the true divergence.
 *
 * All functions returning srdp_status set a thread-local message
 * retrievable through srdp_last_error() on failure. Handles are opaque and
 * must be released with the matching *_free function. Curve handles are
 * immutable and safe to share across threads; ledger handles require
 * external synchronization between a writer and readers.
 */

#ifndef SAMPLERDP_H_
#define SAMPLERDP_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SRDP_API __declspec(dllexport)
#else
#define SRDP_API __attribute__((visibility("default")))
#endif

typedef enum srdp_status {
  SRDP_OK = 0,
  SRDP_ERR_INVALID_ARGUMENT = 1, /* precondition or contract violation */
  SRDP_ERR_PARSE = 2,            /* malformed JSON input */
  SRDP_ERR_UNSUPPORTED = 3,      /* valid request the object cannot serve */
  SRDP_ERR_NUMERIC = 4           /* quadrature failed to converge */
} srdp_status;

typedef enum srdp_bound_kind {
  SRDP_BOUND_GENERAL = 0,
  SRDP_BOUND_TIGHT = 1,
  SRDP_BOUND_LOWER = 2,
  SRDP_BOUND_PUREDP_FORM = 3,
  SRDP_BOUND_ASYMPTOTIC_BAD = 4,
  SRDP_BOUND_ASYMPTOTIC_GOOD = 5
} srdp_bound_kind;

typedef struct srdp_curve srdp_curve;
typedef struct srdp_ledger srdp_ledger;

SRDP_API const char* srdp_version(void);

/* Message for the most recent failure on the calling thread. */
SRDP_API const char* srdp_last_error(void);

/* Releases a string returned through a char** out parameter. */
SRDP_API void srdp_string_free(char* s);

/* ---- privacy curves ---------------------------------------------------- */

SRDP_API srdp_status srdp_curve_gaussian(double sigma, srdp_curve** out);
SRDP_API srdp_status srdp_curve_laplace(double b, srdp_curve** out);
SRDP_API srdp_status srdp_curve_randresp(double p, srdp_curve** out);
SRDP_API srdp_status srdp_curve_puredp(double eps, srdp_curve** out);

/* Exponential-family mechanism bound. Pass INFINITY to disable the
 * lipschitz or smoothness branch or to leave kappa_max unbounded. */
SRDP_API srdp_status srdp_curve_expfamily(double delta_param, double lipschitz,
                                          double smoothness, double kappa_max,
                                          int improved_lipschitz,
                                          srdp_curve** out);

/* Builds a curve from a mechanism spec object, e.g.
 *   {"kind":"gaussian","sigma":5.0}
 *   {"kind":"subsample","base":{...},"gamma":0.001,"bound_kind":"general"}
 */
SRDP_API srdp_status srdp_curve_from_json(const char* json_spec,
                                          srdp_curve** out);

/* Curve of the subsampled mechanism under the chosen bound. alpha_thresh
 * <= 0 selects the default (256). n is the dataset size for the asymptotic
 * kinds and ignored otherwise. */
SRDP_API srdp_status srdp_curve_subsample(const srdp_curve* base, double gamma,
                                          srdp_bound_kind kind,
                                          int alpha_thresh, int64_t n,
                                          srdp_curve** out);

/* RDP parameter at order alpha > 1 (alpha = INFINITY gives eps_inf). */
SRDP_API srdp_status srdp_curve_eval(const srdp_curve* curve, double alpha,
                                     double* out);

/* [lo, hi] enclosure; wider than a point only for subsampled curves
 * evaluated above their exact-summation threshold. */
SRDP_API srdp_status srdp_curve_eval_interval(const srdp_curve* curve,
                                              double alpha, double* lo,
                                              double* hi);

SRDP_API srdp_status srdp_curve_eps_inf(const srdp_curve* curve, double* out);

/* SRDP_ERR_UNSUPPORTED when the curve has no KL level. */
SRDP_API srdp_status srdp_curve_eps_kl(const srdp_curve* curve, double* out);

SRDP_API int srdp_curve_is_tight(const srdp_curve* curve);
SRDP_API int srdp_curve_is_self_consistent(const srdp_curve* curve);

SRDP_API srdp_status srdp_curve_identity(const srdp_curve* curve, char** out);

/* Mechanism spec JSON; SRDP_ERR_UNSUPPORTED for non-serializable curves. */
SRDP_API srdp_status srdp_curve_to_json(const srdp_curve* curve, char** out);

SRDP_API void srdp_curve_free(srdp_curve* curve);

/* ---- amplification bounds at a single order ---------------------------- */

SRDP_API srdp_status srdp_amplify_general(const srdp_curve* base, double gamma,
                                          int64_t alpha, double* out);
SRDP_API srdp_status srdp_amplify_tight(const srdp_curve* base, double gamma,
                                        int64_t alpha, double* out);
SRDP_API srdp_status srdp_amplify_lower(const srdp_curve* base, double gamma,
                                        int64_t alpha, double* out);
SRDP_API srdp_status srdp_amplify_puredp_form(const srdp_curve* base,
                                              double gamma, double alpha,
                                              double* out);

/* Bracketing approximation of the general bound for large alpha. */
SRDP_API srdp_status srdp_approx_general_bound(const srdp_curve* base,
                                               double gamma, int64_t alpha,
                                               double* lo, double* hi);

/* Large-n Gaussian closed forms; bad_case != 0 selects the adversarial
 * data case (which has a pole in alpha). */
SRDP_API srdp_status srdp_asymptotic_gaussian(double sigma, double gamma,
                                              int64_t n, double alpha,
                                              int bad_case, double* out);

/* ---- analytical moments accountant ------------------------------------- */

typedef struct srdp_conversion {
  double value;       /* eps or delta, depending on the query */
  double lambda_star; /* minimizing CGF order */
  int infimum_limited;
} srdp_conversion;

SRDP_API srdp_status srdp_ledger_create(srdp_ledger** out);
SRDP_API srdp_status srdp_ledger_compose(srdp_ledger* ledger,
                                         const srdp_curve* curve,
                                         int64_t count);
SRDP_API srdp_status srdp_ledger_cgf(const srdp_ledger* ledger, double lambda,
                                     double* out);
SRDP_API srdp_status srdp_ledger_eps_inf_total(const srdp_ledger* ledger,
                                               double* out);
SRDP_API srdp_status srdp_ledger_eps_kl_total(const srdp_ledger* ledger,
                                              double* out);
SRDP_API srdp_status srdp_ledger_unique_count(const srdp_ledger* ledger,
                                              size_t* out);
SRDP_API srdp_status srdp_ledger_total_count(const srdp_ledger* ledger,
                                             int64_t* out);

/* Order-alpha RDP to (eps, delta)-DP at a fixed order. */
SRDP_API srdp_status srdp_rdp_to_dp(double eps_alpha, double alpha,
                                    double delta, double* eps_out);

/* tol <= 0 selects the default argument tolerance 1e-10. */
SRDP_API srdp_status srdp_ledger_eps_from_delta(const srdp_ledger* ledger,
                                                double delta, double tol,
                                                srdp_conversion* out);
SRDP_API srdp_status srdp_ledger_delta_from_eps(const srdp_ledger* ledger,
                                                double eps, double tol,
                                                srdp_conversion* out);

/* Projects the total CGF onto the feasible shape (convex, zero at zero,
 * K/lambda nondecreasing). Zeros select the default 512-point log grid on
 * [1e-4, 2^20]. Subsequent compositions drop the projection. */
SRDP_API srdp_status srdp_ledger_project(srdp_ledger* ledger,
                                         double lambda_min, double lambda_max,
                                         int points);

SRDP_API srdp_status srdp_ledger_to_json(const srdp_ledger* ledger, char** out);
SRDP_API srdp_status srdp_ledger_from_json(const char* json,
                                           srdp_ledger** out);
SRDP_API void srdp_ledger_free(srdp_ledger* ledger);

/* ---- classical composition baselines ----------------------------------- */

SRDP_API srdp_status srdp_naive_compose(double eps, double delta,
                                        int64_t rounds, double* eps_out,
                                        double* delta_out);
SRDP_API srdp_status srdp_strong_compose(double eps, double delta,
                                         int64_t rounds, double delta_slack,
                                         double* eps_out, double* delta_out);
SRDP_API srdp_status srdp_subsample_dp(double eps, double delta, double gamma,
                                       double* eps_out, double* delta_out);

/* Classical pipeline baselines calibrated to a total delta budget.
 * feasible_out is 0 when no candidate split satisfies the budget. */
SRDP_API srdp_status srdp_calibrated_strong_dp(const srdp_curve* base,
                                               double gamma, int64_t rounds,
                                               double target_delta,
                                               double* eps_out,
                                               int* feasible_out);
SRDP_API srdp_status srdp_calibrated_naive_dp(const srdp_curve* base,
                                              double gamma, int64_t rounds,
                                              double target_delta,
                                              double* eps_out,
                                              int* feasible_out);

/* ---- verification oracle ------------------------------------------------ */

typedef struct srdp_bound_row {
  double alpha;
  double lower;
  double oracle;          /* NaN when the quadrature failed */
  double upper_general;
  double upper_tight;     /* NaN when the base curve does not qualify */
  double asymptotic_bad;  /* NaN for non-Gaussian mechanisms */
  double asymptotic_good;
  int pass;
  int oracle_ok;
} srdp_bound_row;

/* Per-alpha sandwich check for a catalog mechanism spec (gaussian, laplace
 * or randresp). rows_out must hold n_alphas entries; alphas must be
 * integers >= 2. quad_tol <= 0 selects 1e-12; n <= 0 selects round(100 /
 * gamma) for the asymptotic columns. Quadrature failures mark rows rather
 * than failing the call. */
SRDP_API srdp_status srdp_sandwich_report(const char* mech_json, double gamma,
                                          const double* alphas,
                                          size_t n_alphas, double quad_tol,
                                          int64_t n, srdp_bound_row* rows_out);

/* True divergence of the subsampled worst-case mixture at real alpha > 1. */
SRDP_API srdp_status srdp_oracle_renyi(const char* mech_json, double gamma,
                                       double alpha, double quad_tol,
                                       double* out);

/* E_q[(p/q - 1)^order] (even order), or E_q[|p/q - 1|^order] when
 * absolute != 0. */
SRDP_API srdp_status srdp_oracle_chi(const char* mech_json, int64_t order,
                                     double quad_tol, int absolute,
                                     double* out);

#ifdef __cplusplus
}
#endif

#endif /* SAMPLERDP_H_ */
