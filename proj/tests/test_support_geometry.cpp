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
#include <numbers>
#include <vector>

#include "levelcurve/errors.hpp"
#include "levelcurve/stencil.hpp"
#include "levelcurve/support_geometry.hpp"

using namespace levelcurve;

namespace {

constexpr double kPi = std::numbers::pi;

// Radius of curvature of the ellipse x^2/a^2 + y^2/b^2 = 1 at the point with
// outward normal angle theta: a^2 b^2 / h(theta)^3.
double ellipse_radius(double a, double b, double theta) {
  const double h = std::sqrt(a * a * std::cos(theta) * std::cos(theta) + b * b * std::sin(theta) * std::sin(theta));
  return a * a * b * b / (h * h * h);
}

double max_ellipse_error(std::size_t n) {
  const double a = 2.0, b = 1.0;
  const auto rad = principal_radius_2d(support_of_ellipse(a, b, n));
  double err = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    err = std::max(err, std::abs(rad.b_meridian[j] - ellipse_radius(a, b, 2.0 * kPi * double(j) / double(n))));
  }
  return err;
}

}  // namespace

TEST_CASE("circle support has constant unit radius") {
  const auto b = principal_radius_2d(support_of_circle(1.0, 64));
  for (double v : b.b_meridian) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(b.planar());
  CHECK(check_strict_convexity(b));
}

TEST_CASE("ellipse vertex radius is b^2/a") {
  const auto b = principal_radius_2d(support_of_ellipse(2.0, 1.0, 256));
  CHECK(b.b_meridian[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(check_strict_convexity(b));
}

TEST_CASE("ellipse samples hit the axis values") {
  const auto h = support_of_ellipse(2.0, 1.0, 64).values();
  CHECK(h[0] == doctest::Approx(2.0));
  CHECK(h[16] == doctest::Approx(1.0));
  const auto unit = support_of_ellipse(1.0, 1.0, 32).values();
  for (double v : unit) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("invalid geometry is rejected") {
  CHECK_THROWS_AS(support_of_ellipse(1.0, -1.0, 64), Error);
  try {
    (void)support_of_ellipse(1.0, -1.0, 64);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidGeometry);
  }
  CHECK_THROWS_AS(support_of_circle(1.0, 7), Error);
}

TEST_CASE("non-convex support is rejected") {
  // h = 1 + 0.5 cos(3 theta) has h + h'' = 1 - 4 cos(3 theta) < 0 somewhere.
  std::vector<double> h(64);
  for (std::size_t j = 0; j < h.size(); ++j) h[j] = 1.0 + 0.5 * std::cos(3.0 * 2.0 * kPi * double(j) / 64.0);
  try {
    (void)principal_radius_2d(CircleSupport(h));
    FAIL("expected NonConvexBody");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonConvexBody);
  }
}

TEST_CASE("strict convexity check sees zeros") {
  PrincipalRadii b;
  b.b_meridian = {1.0, 0.0, 1.0};
  CHECK_FALSE(check_strict_convexity(b));
}

TEST_CASE("planar radius converges at least at second order") {
  const double e1 = max_ellipse_error(64);
  const double e2 = max_ellipse_error(128);
  MESSAGE("ellipse radius errors " << e1 << " -> " << e2);
  CHECK(e1 / e2 >= 3.5);
}

TEST_CASE("translation leaves radii unchanged") {
  const std::size_t n = 128;
  const auto base = support_of_ellipse(1.3, 1.0, n).values();
  std::vector<double> moved(base);
  for (std::size_t j = 0; j < n; ++j) {
    const double th = 2.0 * kPi * double(j) / double(n);
    moved[j] += 0.31 * std::cos(th) - 0.17 * std::sin(th);
  }
  const auto b0 = principal_radius_2d(CircleSupport(base));
  const auto b1 = principal_radius_2d(CircleSupport(moved));
  for (std::size_t j = 0; j < n; ++j) {
    CHECK(std::abs(b1.b_meridian[j] - b0.b_meridian[j]) <= 1e-10 * std::abs(b0.b_meridian[j]));
  }
}

TEST_CASE("rotation by grid steps permutes radii exactly") {
  const std::size_t n = 96, k = 7;
  const auto base = support_of_ellipse(1.3, 1.0, n).values();
  std::vector<double> rotated(n);
  for (std::size_t j = 0; j < n; ++j) rotated[j] = base[(j + k) % n];
  const auto b0 = principal_radius_2d(CircleSupport(base));
  const auto b1 = principal_radius_2d(CircleSupport(rotated));
  for (std::size_t j = 0; j < n; ++j) CHECK(b1.b_meridian[j] == b0.b_meridian[(j + k) % n]);
}

TEST_CASE("sphere radii are constant") {
  const auto b = principal_radii_axisym(support_of_sphere(0.7, 32));
  for (std::size_t j = 0; j < b.size(); ++j) {
    CHECK(b.b_meridian[j] == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(b.b_parallel[j] == doctest::Approx(0.7).epsilon(1e-12));
  }
}

TEST_CASE("prolate spheroid equator parallel radius equals the equatorial radius") {
  const std::size_t m = 64;
  const auto b = principal_radii_axisym(support_of_spheroid(1.0, 1.5, m));
  CHECK(b.b_parallel[m / 2] == doctest::Approx(1.0).epsilon(1e-12));
  // Meridian radius at the equator: c^2 / a for the ellipse profile.
  CHECK(b.b_meridian[m / 2] == doctest::Approx(2.25).epsilon(1e-4));
}

TEST_CASE("poles are umbilic") {
  const std::size_t m = 48;
  const auto b = principal_radii_axisym(support_of_spheroid(1.2, 0.9, m));
  CHECK(b.b_parallel[0] == b.b_meridian[0]);
  CHECK(b.b_parallel[m] == b.b_meridian[m]);
}

TEST_CASE("periodic resampling is exact on trigonometric polynomials") {
  std::vector<double> h(32);
  auto f = [](double th) { return 2.0 + 0.3 * std::cos(th) + 0.1 * std::sin(2.0 * th) - 0.05 * std::cos(5.0 * th); };
  for (std::size_t j = 0; j < h.size(); ++j) h[j] = f(2.0 * kPi * double(j) / 32.0);
  const auto r = resample_periodic(h, 80);
  for (std::size_t j = 0; j < r.size(); ++j) CHECK(r[j] == doctest::Approx(f(2.0 * kPi * double(j) / 80.0)).epsilon(1e-13));
}

TEST_CASE("theta stencils differentiate the first harmonic exactly") {
  const ThetaGrid grid(ThetaTopology::Circle, 40);
  std::vector<double> c(40);
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = std::cos(grid.theta(j));
  const auto d1 = grid.first(c);
  const auto d2 = grid.second(c);
  for (std::size_t j = 0; j < c.size(); ++j) {
    CHECK(d1[j] == doctest::Approx(-std::sin(grid.theta(j))).epsilon(1e-14).scale(1.0));
    CHECK(d2[j] == doctest::Approx(-c[j]).epsilon(1e-14).scale(1.0));
  }
}

TEST_CASE("meridian neighbours reflect across the poles") {
  const ThetaGrid grid(ThetaTopology::Meridian, 16);
  CHECK(grid.neighbor(0, -1) == 1);
  CHECK(grid.neighbor(0, -2) == 2);
  CHECK(grid.neighbor(16, 1) == 15);
  CHECK(grid.neighbor(15, 2) == 15);
  CHECK(grid.is_pole(0));
  CHECK(grid.is_pole(16));
}
