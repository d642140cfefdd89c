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

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "levelcurve/levelcurve.h"

namespace {

std::vector<double> circle(double r, std::size_t n) { return std::vector<double>(n, r); }

std::vector<double> ellipse(double a, double b, std::size_t n) {
  std::vector<double> h(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double th = 2.0 * 3.141592653589793 * double(j) / double(n);
    h[j] = std::sqrt(a * a * std::cos(th) * std::cos(th) + b * b * std::sin(th) * std::sin(th));
  }
  return h;
}

}  // namespace

TEST_CASE("version and radius") {
  CHECK(std::string(lc_version()) == "0.1.0");
  const auto h = ellipse(2.0, 1.0, 256);
  std::vector<double> b(h.size());
  REQUIRE(lc_principal_radius_2d(h.data(), h.size(), b.data()) == LC_OK);
  CHECK(b[0] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("planar solve, profile and check through the C API") {
  const std::size_t n = 64, n_t = 33;
  const auto outer = ellipse(1.3, 1.0, n);
  const auto inner = circle(0.4, n);
  lc_problem* prob = nullptr;
  REQUIRE(lc_problem_create_planar(LC_PLAPLACE, 2.0, outer.data(), n, inner.data(), n, n_t, &prob) == LC_OK);
  REQUIRE(lc_problem_set_newton(prob, 1e-11, 40, 0.5, 1) == LC_OK);
  lc_solution* sol = nullptr;
  REQUIRE(lc_solve(prob, &sol) == LC_OK);
  std::size_t nt = 0, ntt = 0;
  REQUIRE(lc_solution_shape(sol, &nt, &ntt) == LC_OK);
  CHECK(nt == n);
  CHECK(ntt == n_t);
  double res = 0.0;
  int it = 0;
  REQUIRE(lc_solution_stats(sol, &res, &it) == LC_OK);
  CHECK(res < 1e-11);
  std::vector<double> ht(n * n_t);
  REQUIRE(lc_solution_field(sol, LC_FIELD_H_T, ht.data(), ht.size()) == LC_OK);
  for (double v : ht) CHECK(v < 0.0);
  CHECK(lc_solution_field(sol, LC_FIELD_B_PARALLEL, ht.data(), ht.size()) == LC_ERR_INVALID_ARGUMENT);
  CHECK(lc_solution_field(sol, LC_FIELD_H, ht.data(), 3) == LC_ERR_INVALID_ARGUMENT);
  std::size_t row = 0;
  REQUIRE(lc_solution_gradient_argmax_row(sol, &row) == LC_OK);
  CHECK((row == 0 || row == n_t - 1));

  lc_profile* prof = nullptr;
  REQUIRE(lc_profile_from_solution(sol, LC_MAX_GRAD_OVER_K1, &prof) == LC_OK);
  CHECK(lc_profile_size(prof) == n_t - 2);
  std::vector<double> t(n_t - 2), f(n_t - 2);
  REQUIRE(lc_profile_values(prof, t.data(), f.data(), t.size()) == LC_OK);
  double f0 = 0.0, f1 = 0.0;
  REQUIRE(lc_profile_endpoints(prof, &f0, &f1) == LC_OK);
  lc_check_result cr;
  REQUIRE(lc_profile_check(prof, LC_CHECK_CONVEX, 1e-3 * f0, &cr) == LC_OK);
  CHECK(cr.pass == 1);
  REQUIRE(lc_profile_check(prof, LC_CHECK_AFFINE, 1e-3, &cr) == LC_OK);
  CHECK(cr.has_slope == 1);
  lc_profile_free(prof);
  lc_solution_free(sol);
  lc_problem_free(prob);
}

TEST_CASE("errors map to status codes") {
  const auto c = circle(1.0, 32);
  lc_problem* prob = nullptr;
  CHECK(lc_problem_create_planar(LC_PLAPLACE, 2.0, c.data(), 32, c.data(), 32, 9, &prob) == LC_ERR_INVALID_PROBLEM);
  CHECK(prob == nullptr);
  CHECK(std::string(lc_last_error()).size() > 0);
  const auto big = circle(0.5, 32);
  CHECK(lc_problem_create_planar(LC_PLAPLACE, 0.5, c.data(), 32, big.data(), 32, 9, &prob) == LC_ERR_INVALID_PROBLEM);
  CHECK(lc_problem_create_planar(LC_HARMONIC_AXISYM_3D, 2.0, c.data(), 32, big.data(), 32, 9, &prob) ==
        LC_ERR_INVALID_ARGUMENT);
  CHECK(lc_solve(nullptr, nullptr) == LC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("axisymmetric problem") {
  const std::size_t m = 32;
  const auto outer = circle(1.0, m + 1);
  const auto inner = circle(0.5, m + 1);
  lc_problem* prob = nullptr;
  REQUIRE(lc_problem_create_axisym(outer.data(), inner.data(), m, 17, &prob) == LC_OK);
  lc_solution* sol = nullptr;
  REQUIRE(lc_solve(prob, &sol) == LC_OK);
  std::vector<double> bp((m + 1) * 17);
  CHECK(lc_solution_field(sol, LC_FIELD_B_PARALLEL, bp.data(), bp.size()) == LC_OK);
  lc_profile* prof = nullptr;
  CHECK(lc_profile_from_solution(sol, LC_GAUSS_2D, &prof) == LC_ERR_INVALID_ARGUMENT);
  lc_solution_free(sol);
  lc_problem_free(prob);
}

TEST_CASE("jet batch summary") {
  lc_jet_summary s;
  REQUIRE(lc_jet_batch(LC_JET_PLAPLACE, 3, 2.0, 0.0, 0.0, 100, 1, 2, &s) == LC_OK);
  CHECK(s.count == 100);
  CHECK(s.failed_jets == 0);
  CHECK(s.worst_identity_error < 1e-9);
  CHECK(s.worst_inequality_slack >= -1e-9);
  CHECK(lc_jet_batch(LC_JET_PLAPLACE, 1, 2.0, 0.0, 0.0, 10, 1, 1, &s) == LC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("run a config file") {
  const auto dir = std::filesystem::temp_directory_path() / "levelcurve_test_capi";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  {
    std::ofstream cfg(dir / "jets.json");
    cfg << R"({"command": "jets", "jets": {"mode": "minimal", "n": 3, "alpha": -1, "beta": 1, "count": 50}})";
  }
  const std::string out = (dir / "out").string();
  const uint64_t seed = 5;
  lc_run_result r;
  REQUIRE(lc_run_config((dir / "jets.json").c_str(), out.c_str(), &seed, &r) == LC_OK);
  CHECK(r.exit_code == 0);
  CHECK(r.error_json == nullptr);
  CHECK(std::string(r.summary).find("final_nonnegative") != std::string::npos);
  lc_run_result_free(&r);
  CHECK(std::filesystem::exists(dir / "out" / "jets.jsonl"));

  REQUIRE(lc_run_config((dir / "missing.json").c_str(), nullptr, nullptr, &r) == LC_OK);
  CHECK(r.exit_code == 1);
  REQUIRE(r.error_json != nullptr);
  CHECK(std::string(r.error_json).find("\"error\"") != std::string::npos);
  lc_run_result_free(&r);
}
