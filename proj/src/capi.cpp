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

#include "levelcurve/levelcurve.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "levelcurve/errors.hpp"
#include "levelcurve/jet_verifier.hpp"
#include "levelcurve/profile_analysis.hpp"
#include "levelcurve/ring_solver.hpp"
#include "levelcurve/run.hpp"
#include "levelcurve/support_geometry.hpp"

struct lc_problem {
  levelcurve::RingProblem problem;
};

struct lc_solution {
  levelcurve::SupportSolution solution;
};

struct lc_profile {
  levelcurve::HeightProfile profile;
};

namespace {

thread_local std::string g_last_error;

lc_status fail(lc_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

/// Maps exceptions to status codes; nothing escapes the C boundary.
template <class F>
lc_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return LC_OK;
  } catch (const levelcurve::Error& e) {
    return fail(static_cast<lc_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::exception& e) {
    return fail(LC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LC_ERR_INTERNAL, "unknown error");
  }
}

#define LC_REQUIRE(cond, msg) \
  do {                        \
    if (!(cond)) return fail(LC_ERR_INVALID_ARGUMENT, msg); \
  } while (0)

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::optional<levelcurve::EquationSpec> equation_of(lc_equation e, double p) {
  switch (e) {
    case LC_PLAPLACE:
      return levelcurve::EquationSpec::p_laplace(p);
    case LC_MINIMAL_SURFACE:
      return levelcurve::EquationSpec::minimal_surface();
    case LC_HARMONIC_AXISYM_3D:
      return levelcurve::EquationSpec::harmonic_axisym_3d();
  }
  return std::nullopt;
}

bool valid_profile_kind(lc_profile_kind k) { return k >= LC_MAX_GRAD_OVER_K1 && k <= LC_GAUSS_2D; }

}  // namespace

extern "C" {

const char* lc_version(void) { return "0.1.0"; }

const char* lc_last_error(void) { return g_last_error.c_str(); }

lc_status lc_principal_radius_2d(const double* h, size_t n, double* radius_out) {
  LC_REQUIRE(h != nullptr && radius_out != nullptr, "null pointer argument");
  return guarded([&] {
    const levelcurve::CircleSupport s(std::vector<double>(h, h + n));
    const auto b = levelcurve::radii_unchecked(s.grid(), s.values());
    std::copy(b.b_meridian.begin(), b.b_meridian.end(), radius_out);
  });
}

lc_status lc_problem_create_planar(lc_equation equation, double p, const double* h_outer, size_t n_outer,
                                   const double* h_inner, size_t n_inner, size_t n_t, lc_problem** out) {
  LC_REQUIRE(h_outer != nullptr && h_inner != nullptr && out != nullptr, "null pointer argument");
  LC_REQUIRE(equation == LC_PLAPLACE || equation == LC_MINIMAL_SURFACE, "planar problems take LC_PLAPLACE or LC_MINIMAL_SURFACE");
  *out = nullptr;
  return guarded([&] {
    const auto eq = *equation_of(equation, equation == LC_PLAPLACE ? p : 2.0);
    const levelcurve::CircleSupport outer(std::vector<double>(h_outer, h_outer + n_outer));
    const levelcurve::CircleSupport inner(std::vector<double>(h_inner, h_inner + n_inner));
    *out = new lc_problem{levelcurve::RingProblem::planar(eq, outer, inner, n_t)};
  });
}

lc_status lc_problem_create_axisym(const double* h_outer, const double* h_inner, size_t m, size_t n_t,
                                   lc_problem** out) {
  LC_REQUIRE(h_outer != nullptr && h_inner != nullptr && out != nullptr, "null pointer argument");
  *out = nullptr;
  return guarded([&] {
    const levelcurve::MeridianSupport outer(std::vector<double>(h_outer, h_outer + m + 1));
    const levelcurve::MeridianSupport inner(std::vector<double>(h_inner, h_inner + m + 1));
    *out = new lc_problem{
        levelcurve::RingProblem::axisymmetric(levelcurve::EquationSpec::harmonic_axisym_3d(), outer, inner, n_t)};
  });
}

lc_status lc_problem_set_newton(lc_problem* problem, double tol, int max_iter, double damping, int convexity_guard) {
  LC_REQUIRE(problem != nullptr, "null problem");
  LC_REQUIRE(tol > 0.0 && max_iter > 0 && damping > 0.0 && damping < 1.0, "invalid Newton options");
  return guarded([&] {
    levelcurve::NewtonOptions o{tol, max_iter, damping, convexity_guard != 0};
    problem->problem = problem->problem.with_newton(o);
  });
}

void lc_problem_free(lc_problem* problem) { delete problem; }

lc_status lc_solve(const lc_problem* problem, lc_solution** out) {
  LC_REQUIRE(problem != nullptr && out != nullptr, "null pointer argument");
  *out = nullptr;
  return guarded([&] { *out = new lc_solution{levelcurve::solve(problem->problem)}; });
}

void lc_solution_free(lc_solution* solution) { delete solution; }

lc_status lc_solution_shape(const lc_solution* solution, size_t* n_theta, size_t* n_t) {
  LC_REQUIRE(solution != nullptr && n_theta != nullptr && n_t != nullptr, "null pointer argument");
  *n_theta = solution->solution.n_theta;
  *n_t = solution->solution.n_t;
  return LC_OK;
}

lc_status lc_solution_stats(const lc_solution* solution, double* residual_norm, int* iterations) {
  LC_REQUIRE(solution != nullptr && residual_norm != nullptr && iterations != nullptr, "null pointer argument");
  *residual_norm = solution->solution.residual_norm;
  *iterations = solution->solution.iterations;
  return LC_OK;
}

lc_status lc_solution_field(const lc_solution* solution, lc_field field, double* out, size_t len) {
  LC_REQUIRE(solution != nullptr && out != nullptr, "null pointer argument");
  const auto& s = solution->solution;
  const std::vector<double>* src = nullptr;
  switch (field) {
    case LC_FIELD_H:
      src = &s.h;
      break;
    case LC_FIELD_H_T:
      src = &s.h_t;
      break;
    case LC_FIELD_B_MERIDIAN:
      src = &s.b_meridian;
      break;
    case LC_FIELD_B_PARALLEL:
      src = &s.b_parallel;
      break;
  }
  LC_REQUIRE(src != nullptr, "unknown field");
  LC_REQUIRE(!src->empty(), "field not available for this solution");
  LC_REQUIRE(len >= src->size(), "output buffer too small");
  std::copy(src->begin(), src->end(), out);
  return LC_OK;
}

lc_status lc_solution_gradient_argmax_row(const lc_solution* solution, size_t* row) {
  LC_REQUIRE(solution != nullptr && row != nullptr, "null pointer argument");
  return guarded([&] { *row = levelcurve::gradient_argmax_row(solution->solution); });
}

lc_status lc_profile_from_solution(const lc_solution* solution, lc_profile_kind kind, lc_profile** out) {
  LC_REQUIRE(solution != nullptr && out != nullptr, "null pointer argument");
  LC_REQUIRE(valid_profile_kind(kind), "unknown profile kind");
  *out = nullptr;
  return guarded([&] {
    *out = new lc_profile{levelcurve::profile_from_solution(solution->solution, static_cast<levelcurve::ProfileKind>(kind))};
  });
}

size_t lc_profile_size(const lc_profile* profile) { return profile == nullptr ? 0 : profile->profile.f.size(); }

lc_status lc_profile_values(const lc_profile* profile, double* t, double* f, size_t len) {
  LC_REQUIRE(profile != nullptr && t != nullptr && f != nullptr, "null pointer argument");
  LC_REQUIRE(len >= profile->profile.f.size(), "output buffer too small");
  std::copy(profile->profile.t.begin(), profile->profile.t.end(), t);
  std::copy(profile->profile.f.begin(), profile->profile.f.end(), f);
  return LC_OK;
}

lc_status lc_profile_endpoints(const lc_profile* profile, double* f0, double* f1) {
  LC_REQUIRE(profile != nullptr && f0 != nullptr && f1 != nullptr, "null pointer argument");
  *f0 = profile->profile.f0;
  *f1 = profile->profile.f1;
  return LC_OK;
}

lc_status lc_profile_check(const lc_profile* profile, lc_check_kind kind, double tol, lc_check_result* out) {
  LC_REQUIRE(profile != nullptr && out != nullptr, "null pointer argument");
  LC_REQUIRE(tol >= 0.0, "tolerance must be non-negative");
  return guarded([&] {
    const auto& p = profile->profile;
    levelcurve::CheckReport r;
    switch (kind) {
      case LC_CHECK_CONVEX:
        r = levelcurve::check_convex(p, tol);
        break;
      case LC_CHECK_CONCAVE:
        r = levelcurve::check_concave(p, tol);
        break;
      case LC_CHECK_AFFINE:
        r = levelcurve::check_affine(p, tol);
        break;
      case LC_CHECK_ENDPOINT:
        r = levelcurve::check_endpoint_bound(p, p.f0, p.f1, tol);
        break;
      default:
        throw levelcurve::Error(levelcurve::ErrorCode::InvalidArgument, "unknown check kind");
    }
    *out = lc_check_result{r.pass ? 1 : 0, r.worst_value, r.location, r.tol_used, r.fitted_slope ? 1 : 0,
                           r.fitted_slope.value_or(0.0)};
  });
}

void lc_profile_free(lc_profile* profile) { delete profile; }

lc_status lc_jet_batch(lc_jet_mode mode, int n, double p, double alpha, double beta, size_t count, uint64_t seed,
                       unsigned threads, lc_jet_summary* out) {
  LC_REQUIRE(out != nullptr, "null pointer argument");
  LC_REQUIRE(mode == LC_JET_PLAPLACE || mode == LC_JET_MINIMAL, "unknown jet mode");
  return guarded([&] {
    levelcurve::JetBatchConfig cfg;
    cfg.options.mode = mode == LC_JET_PLAPLACE ? levelcurve::JetMode::PLaplace : levelcurve::JetMode::Minimal;
    cfg.options.n = n;
    cfg.options.p = p;
    cfg.options.alpha = alpha;
    cfg.options.beta = beta;
    cfg.count = count;
    cfg.seed = seed;
    cfg.threads = threads;
    const auto reports = levelcurve::run_jet_batch(cfg);
    lc_jet_summary s{count, 0, 0.0, 0.0, 0.0};
    bool first_slack = true;
    for (const auto& r : reports) {
      if (!r.pass()) ++s.failed_jets;
      for (const auto& st : r.steps) {
        switch (st.kind) {
          case levelcurve::StepKind::Identity:
            s.worst_identity_error = std::max(s.worst_identity_error, st.value);
            break;
          case levelcurve::StepKind::Inequality:
            s.worst_inequality_slack = first_slack ? st.value : std::min(s.worst_inequality_slack, st.value);
            first_slack = false;
            break;
          case levelcurve::StepKind::Zero:
            s.worst_zero_value = std::max(s.worst_zero_value, st.value);
            break;
          case levelcurve::StepKind::Exploratory:
            break;
        }
      }
    }
    *out = s;
  });
}

lc_status lc_run_config(const char* config_path, const char* out_dir, const uint64_t* seed, lc_run_result* out) {
  LC_REQUIRE(config_path != nullptr && out != nullptr, "null pointer argument");
  *out = lc_run_result{1, nullptr, nullptr};
  return guarded([&] {
    levelcurve::RunOverrides ov;
    if (out_dir != nullptr) ov.output_dir = out_dir;
    if (seed != nullptr) ov.seed = *seed;
    const auto outcome = levelcurve::run_config_file(config_path, ov);
    std::string summary;
    for (const auto& line : outcome.summary) summary += line + '\n';
    out->exit_code = outcome.exit_code;
    out->summary = dup_string(summary);
    out->error_json = outcome.error_json.empty() ? nullptr : dup_string(outcome.error_json);
  });
}

void lc_run_result_free(lc_run_result* result) {
  if (result == nullptr) return;
  std::free(result->summary);
  std::free(result->error_json);
  result->summary = nullptr;
  result->error_json = nullptr;
}

}  // extern "C"
