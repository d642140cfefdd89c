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

#include <algorithm>
#include <cmath>
#include <vector>

#include "levelcurve/analytic.hpp"
#include "levelcurve/profile_analysis.hpp"
#include "levelcurve/ring_solver.hpp"

using namespace levelcurve;

namespace {

HeightProfile negate(HeightProfile p) {
  for (double& v : p.f) v = -v;
  p.f0 = -p.f0;
  p.f1 = -p.f1;
  return p;
}

// Largest chord violation f - chord of a convex target, computed directly.
double chord_violation(const HeightProfile& p) {
  double worst = -1e300;
  for (std::size_t k = 0; k < p.f.size(); ++k) {
    worst = std::max(worst, p.f[k] - ((1.0 - p.t[k]) * p.f0 + p.t[k] * p.f1));
  }
  return worst;
}

}  // namespace

TEST_CASE("names round-trip") {
  for (auto k : {ProfileKind::MaxGradOverK1, ProfileKind::MinLogK1, ProfileKind::Gauss2d}) {
    CHECK(parse_profile_kind(profile_kind_name(k)) == k);
  }
  for (auto k : {CheckKind::Convex, CheckKind::Concave, CheckKind::Affine, CheckKind::EndpointBound}) {
    CHECK(parse_check_kind(check_kind_name(k)) == k);
  }
  CHECK_THROWS(parse_profile_kind("nope"));
}

TEST_CASE("convex and concave samples") {
  const auto sq = sample_profile(ProfileKind::MaxGradOverK1, 33, [](double t) { return t * t; });
  const auto c = check_convex(sq, 1e-12);
  CHECK(c.pass);
  CHECK(c.worst_value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK_FALSE(check_concave(sq, 1e-12).pass);
  CHECK(sq.t.size() == 31);
  CHECK(sq.f0 == 0.0);
  CHECK(sq.f1 == 1.0);
}

TEST_CASE("convex check of f mirrors concave check of -f") {
  for (auto fn : {+[](double t) { return std::sin(3.0 * t); }, +[](double t) { return std::exp(t) - t * t * t; }}) {
    const auto p = sample_profile(ProfileKind::MaxGradOverK1, 41, fn);
    const auto a = check_convex(p, 1e-3);
    const auto b = check_concave(negate(p), 1e-3);
    CHECK(std::abs(a.worst_value) == std::abs(b.worst_value));
    CHECK(a.pass == b.pass);
    CHECK(a.location == b.location);
  }
}

TEST_CASE("affine profile fits exactly") {
  const auto p = sample_profile(ProfileKind::MaxGradOverK1, 65, [](double t) { return 0.25 - 3.0 * t; });
  const auto r = check_affine(p, 1e-12);
  CHECK(r.pass);
  REQUIRE(r.fitted_slope);
  CHECK(*r.fitted_slope == doctest::Approx(-3.0).epsilon(1e-12));
  const auto bumped = sample_profile(ProfileKind::MaxGradOverK1, 65, [](double t) { return t + 1e-6 * std::sin(9.0 * t); });
  CHECK_FALSE(check_affine(bumped, 1e-9).pass);
}

TEST_CASE("endpoint bound: affine is tight, a bump above the chord fails") {
  const auto lin = sample_profile(ProfileKind::MaxGradOverK1, 33, [](double t) { return 1.0 + t; });
  CHECK(std::abs(check_endpoint_bound(lin, lin.f0, lin.f1, 0.0).worst_value) < 1e-15);
  const auto bump = sample_profile(ProfileKind::MaxGradOverK1, 33,
                                   [](double t) { return 1.0 + t + 0.1 * std::exp(-100.0 * (t - 0.5) * (t - 0.5)); });
  CHECK_FALSE(check_endpoint_bound(bump, bump.f0, bump.f1, 1e-3).pass);
  // Concave targets flip the sign: a dip below the chord fails.
  const auto dip = sample_profile(ProfileKind::MinLogK1, 33,
                                  [](double t) { return 1.0 + t - 0.1 * std::exp(-100.0 * (t - 0.5) * (t - 0.5)); });
  CHECK_FALSE(check_endpoint_bound(dip, dip.f0, dip.f1, 1e-3).pass);
}

TEST_CASE("convexity within tol bounds the chord violation by tol / 4") {
  auto fns = {+[](double t) { return t * t; }, +[](double t) { return std::cosh(2.0 * t); },
              +[](double t) { return 1e-4 * std::sin(6.0 * t) + t * t; }, +[](double t) { return -1e-3 * t * (1.0 - t); }};
  for (auto fn : fns) {
    for (std::size_t n_t : {17u, 33u, 65u}) {
      const auto p = sample_profile(ProfileKind::MaxGradOverK1, n_t, fn);
      const double tol = std::max(0.0, -check_convex(p, 0.0).worst_value);
      CHECK(chord_violation(p) <= tol / 4.0 + p.dt * p.dt);
    }
  }
}

TEST_CASE("default tolerance formula") {
  const auto p = sample_profile(ProfileKind::MaxGradOverK1, 11, [](double t) { return 2.0 + t; });
  const double dth = 0.1;
  CHECK(default_tolerance(p, dth) == doctest::Approx(10.0 * (0.01 + 1e-4) * 3.0));
  const auto tiny = sample_profile(ProfileKind::MaxGradOverK1, 100001, [](double) { return 1.0; });
  CHECK(default_tolerance(tiny, 1e-6) == doctest::Approx(1e-9));
}

TEST_CASE("solver profiles of an eccentric ring agree with the closed form") {
  const std::size_t n = 128, n_t = 65;
  const auto prob = RingProblem::planar(EquationSpec::p_laplace(2.0), support_of_circle(1.0, n),
                                        support_of_offset_circle(0.3, 0.2, 0.0, n), n_t);
  const auto sol = solve(prob);
  const EccentricHarmonic exact(Circle{0.0, 0.0, 1.0}, Circle{0.2, 0.0, 0.3});
  for (auto kind : {ProfileKind::MaxGradOverK1, ProfileKind::MinLogK1, ProfileKind::Gauss2d}) {
    const auto num = profile_from_solution(sol, kind);
    const auto ref = profile_from_handle(exact, kind, n_t);
    double d = std::max(std::abs(num.f0 - ref.f0), std::abs(num.f1 - ref.f1));
    for (std::size_t k = 0; k < num.f.size(); ++k) d = std::max(d, std::abs(num.f[k] - ref.f[k]));
    CHECK(d < 1e-3 * std::max(1.0, ref.max_abs()));
  }
}

TEST_CASE("theta refinement moves the profile less than the tolerance") {
  const std::size_t n_t = 33;
  auto profile_at = [&](std::size_t n) {
    const auto prob = RingProblem::planar(EquationSpec::p_laplace(2.0), support_of_ellipse(1.3, 1.0, n),
                                          support_of_circle(0.4, n), n_t);
    return profile_from_solution(solve(prob), ProfileKind::MaxGradOverK1);
  };
  const auto a = profile_at(64);
  const auto b = profile_at(128);
  double d = 0.0;
  for (std::size_t k = 0; k < a.f.size(); ++k) d = std::max(d, std::abs(a.f[k] - b.f[k]));
  CHECK(d < default_tolerance(a, 2.0 * 3.141592653589793 / 64.0));
}

TEST_CASE("gauss2d is limited to planar p-Laplace solutions") {
  const std::size_t m = 32;
  const auto prob = RingProblem::axisymmetric(EquationSpec::harmonic_axisym_3d(), support_of_sphere(1.0, m),
                                              support_of_sphere(0.5, m), 9);
  const auto sol = solve(prob);
  CHECK_THROWS(profile_from_solution(sol, ProfileKind::Gauss2d));
  CHECK_NOTHROW(profile_from_solution(sol, ProfileKind::MinLogK1));
}
