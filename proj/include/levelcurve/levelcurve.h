// Copyright 2026 The levelcurve Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to levelcurve. Every function returns an lc_status; on failure
 * lc_last_error() describes the most recent error on the calling thread.
 * Objects are opaque and owned by the caller once created. */

#ifndef LEVELCURVE_LEVELCURVE_H_
#define LEVELCURVE_LEVELCURVE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(LEVELCURVE_BUILDING_LIBRARY)
#define LC_API __attribute__((visibility("default")))
#else
#define LC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lc_status {
  LC_OK = 0,
  LC_ERR_INVALID_ARGUMENT = 1,
  LC_ERR_INVALID_GEOMETRY = 2,
  LC_ERR_NON_CONVEX_BODY = 3,
  LC_ERR_INVALID_PROBLEM = 4,
  LC_ERR_NON_CONVEX_ITERATE = 5,
  LC_ERR_NEWTON_DIVERGED = 6,
  LC_ERR_OUT_OF_RANGE = 7,
  LC_ERR_GEOMETRY_NOT_NESTED = 8,
  LC_ERR_NO_RADIAL_SOLUTION = 9,
  LC_ERR_TOO_FEW_SAMPLES = 10,
  LC_ERR_INVALID_CONFIG = 11,
  LC_ERR_IO = 12,
  LC_ERR_INTERNAL = 99
} lc_status;

typedef enum lc_equation { LC_PLAPLACE = 0, LC_MINIMAL_SURFACE = 1, LC_HARMONIC_AXISYM_3D = 2 } lc_equation;

typedef enum lc_field { LC_FIELD_H = 0, LC_FIELD_H_T = 1, LC_FIELD_B_MERIDIAN = 2, LC_FIELD_B_PARALLEL = 3 } lc_field;

typedef enum lc_profile_kind { LC_MAX_GRAD_OVER_K1 = 0, LC_MIN_LOG_K1 = 1, LC_GAUSS_2D = 2 } lc_profile_kind;

typedef enum lc_check_kind { LC_CHECK_CONVEX = 0, LC_CHECK_CONCAVE = 1, LC_CHECK_AFFINE = 2, LC_CHECK_ENDPOINT = 3 } lc_check_kind;

typedef enum lc_jet_mode { LC_JET_PLAPLACE = 0, LC_JET_MINIMAL = 1 } lc_jet_mode;

typedef struct lc_problem lc_problem;
typedef struct lc_solution lc_solution;
typedef struct lc_profile lc_profile;

typedef struct lc_check_result {
  int pass;
  double worst_value;
  size_t location;
  double tol_used;
  int has_slope;
  double fitted_slope;
} lc_check_result;

typedef struct lc_jet_summary {
  size_t count;
  size_t failed_jets;
  double worst_identity_error;
  /* Smallest inequality slack over all checked inequality steps. */
  double worst_inequality_slack;
  double worst_zero_value;
} lc_jet_summary;

typedef struct lc_run_result {
  int exit_code;
  /* Newline-separated summary lines; owned by the result. */
  char* summary;
  /* Error JSON when exit_code is 1, otherwise NULL. */
  char* error_json;
} lc_run_result;

LC_API const char* lc_version(void);
LC_API const char* lc_last_error(void);

/* Principal radius h + h'' of a support function sampled on 2 pi j / n. */
LC_API lc_status lc_principal_radius_2d(const double* h, size_t n, double* radius_out);

/* Planar ring. h_outer and h_inner sample the boundaries on 2 pi j / n; the
 * inner body is resampled when its count differs. p is ignored unless the
 * equation is LC_PLAPLACE. */
LC_API lc_status lc_problem_create_planar(lc_equation equation, double p, const double* h_outer, size_t n_outer,
                                          const double* h_inner, size_t n_inner, size_t n_t, lc_problem** out);
/* Axisymmetric ring, meridian samples on pi j / m (m + 1 values each). */
LC_API lc_status lc_problem_create_axisym(const double* h_outer, const double* h_inner, size_t m, size_t n_t,
                                          lc_problem** out);
LC_API lc_status lc_problem_set_newton(lc_problem* problem, double tol, int max_iter, double damping,
                                       int convexity_guard);
LC_API void lc_problem_free(lc_problem* problem);

LC_API lc_status lc_solve(const lc_problem* problem, lc_solution** out);
LC_API void lc_solution_free(lc_solution* solution);
LC_API lc_status lc_solution_shape(const lc_solution* solution, size_t* n_theta, size_t* n_t);
LC_API lc_status lc_solution_stats(const lc_solution* solution, double* residual_norm, int* iterations);
/* Copies a field, row-major by level (n_t rows of n_theta values). */
LC_API lc_status lc_solution_field(const lc_solution* solution, lc_field field, double* out, size_t len);
LC_API lc_status lc_solution_gradient_argmax_row(const lc_solution* solution, size_t* row);

LC_API lc_status lc_profile_from_solution(const lc_solution* solution, lc_profile_kind kind, lc_profile** out);
/* Interior levels only. */
LC_API size_t lc_profile_size(const lc_profile* profile);
LC_API lc_status lc_profile_values(const lc_profile* profile, double* t, double* f, size_t len);
LC_API lc_status lc_profile_endpoints(const lc_profile* profile, double* f0, double* f1);
LC_API lc_status lc_profile_check(const lc_profile* profile, lc_check_kind kind, double tol, lc_check_result* out);
LC_API void lc_profile_free(lc_profile* profile);

LC_API lc_status lc_jet_batch(lc_jet_mode mode, int n, double p, double alpha, double beta, size_t count,
                              uint64_t seed, unsigned threads, lc_jet_summary* out);

/* Runs a JSON config. out_dir and seed may be NULL to keep the config values. */
LC_API lc_status lc_run_config(const char* config_path, const char* out_dir, const uint64_t* seed,
                               lc_run_result* out);
LC_API void lc_run_result_free(lc_run_result* result);

#ifdef __cplusplus
}
#endif

#endif /* LEVELCURVE_LEVELCURVE_H_ */
