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

#include "levelcurve/support_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "levelcurve/errors.hpp"

namespace levelcurve {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidGeometry,
                std::string(name) + " must be positive and finite, got " + std::to_string(v));
  }
}

void require_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidGeometry, "support samples must be finite");
  }
}

void throw_if_nonconvex(const PrincipalRadii& b, double eps) {
  auto check = [&](const std::vector<double>& v, const char* which) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!(v[j] > eps)) {
        throw Error(ErrorCode::NonConvexBody, std::string(which) + " radius " + std::to_string(v[j]) +
                                                  " at node " + std::to_string(j) + " is not above " +
                                                  std::to_string(eps));
      }
    }
  };
  check(b.b_meridian, "meridian");
  check(b.b_parallel, "parallel");
}

}  // namespace

CircleSupport::CircleSupport(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 16 || values_.size() % 2 != 0) {
    throw Error(ErrorCode::InvalidGeometry,
                "circle support needs an even number of samples >= 16, got " + std::to_string(values_.size()));
  }
  require_finite(values_);
}

MeridianSupport::MeridianSupport(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 9) {
    throw Error(ErrorCode::InvalidGeometry,
                "meridian support needs at least 9 nodes, got " + std::to_string(values_.size()));
  }
  require_finite(values_);
}

double PrincipalRadii::b_max(std::size_t j) const noexcept {
  return b_parallel.empty() ? b_meridian[j] : std::max(b_meridian[j], b_parallel[j]);
}

double PrincipalRadii::min_entry() const noexcept {
  double m = *std::min_element(b_meridian.begin(), b_meridian.end());
  if (!b_parallel.empty()) m = std::min(m, *std::min_element(b_parallel.begin(), b_parallel.end()));
  return m;
}

PrincipalRadii radii_unchecked(const ThetaGrid& grid, std::span<const double> h) {
  PrincipalRadii out;
  const std::size_t n = grid.nodes();
  out.b_meridian.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.b_meridian[j] = h[j] + grid.second_at(h, j);
  if (grid.topology() == ThetaTopology::Meridian) {
    out.b_parallel.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (grid.is_pole(j)) {
        out.b_parallel[j] = out.b_meridian[j];
      } else {
        const double th = grid.theta(j);
        out.b_parallel[j] = h[j] + grid.first_at(h, j) * std::cos(th) / std::sin(th);
      }
    }
  }
  return out;
}

PrincipalRadii principal_radius_2d(const CircleSupport& h, double eps) {
  PrincipalRadii b = radii_unchecked(h.grid(), h.values());
  throw_if_nonconvex(b, eps);
  return b;
}

PrincipalRadii principal_radii_axisym(const MeridianSupport& h, double eps) {
  PrincipalRadii b = radii_unchecked(h.grid(), h.values());
  throw_if_nonconvex(b, eps);
  return b;
}

bool check_strict_convexity(const PrincipalRadii& b, double eps) {
  auto ok = [eps](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [eps](double x) { return x > eps; });
  };
  return !b.b_meridian.empty() && ok(b.b_meridian) && ok(b.b_parallel);
}

CircleSupport support_of_circle(double r, std::size_t n_theta) {
  return support_of_offset_circle(r, 0.0, 0.0, n_theta);
}

CircleSupport support_of_ellipse(double a, double b, std::size_t n_theta) {
  require_positive(a, "ellipse semi-axis a");
  require_positive(b, "ellipse semi-axis b");
  std::vector<double> h(n_theta);
  for (std::size_t j = 0; j < n_theta; ++j) {
    const double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_theta);
    const double c = std::cos(th), s = std::sin(th);
    h[j] = std::sqrt(a * a * c * c + b * b * s * s);
  }
  return CircleSupport(std::move(h));
}

CircleSupport support_of_offset_circle(double r, double cx, double cy, std::size_t n_theta) {
  require_positive(r, "circle radius");
  if (!std::isfinite(cx) || !std::isfinite(cy)) {
    throw Error(ErrorCode::InvalidGeometry, "circle centre must be finite");
  }
  std::vector<double> h(n_theta);
  for (std::size_t j = 0; j < n_theta; ++j) {
    const double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_theta);
    h[j] = r + cx * std::cos(th) + cy * std::sin(th);
  }
  return CircleSupport(std::move(h));
}

MeridianSupport support_of_sphere(double r, std::size_t m_theta) {
  return support_of_spheroid(r, r, m_theta);
}

MeridianSupport support_of_spheroid(double a, double c, std::size_t m_theta) {
  require_positive(a, "spheroid equatorial semi-axis a");
  require_positive(c, "spheroid polar semi-axis c");
  std::vector<double> h(m_theta + 1);
  for (std::size_t j = 0; j <= m_theta; ++j) {
    const double th = kPi * static_cast<double>(j) / static_cast<double>(m_theta);
    const double co = std::cos(th), si = std::sin(th);
    h[j] = std::sqrt(c * c * co * co + a * a * si * si);
  }
  return MeridianSupport(std::move(h));
}

std::vector<double> resample_periodic(std::span<const double> values, std::size_t n_out) {
  const std::size_t n = values.size();
  if (n == 0 || n_out == 0) throw Error(ErrorCode::InvalidArgument, "cannot resample an empty grid");
  if (n == n_out) return {values.begin(), values.end()};
  const std::size_t kmax = n / 2;
  std::vector<double> ca(kmax + 1, 0.0), sa(kmax + 1, 0.0);
  for (std::size_t k = 0; k <= kmax; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const double th = 2.0 * kPi * static_cast<double>(j * k % n) / static_cast<double>(n);
      ca[k] += values[j] * std::cos(th);
      sa[k] += values[j] * std::sin(th);
    }
    const bool edge = (k == 0) || (n % 2 == 0 && k == kmax);
    ca[k] *= (edge ? 1.0 : 2.0) / static_cast<double>(n);
    sa[k] *= (edge ? 0.0 : 2.0) / static_cast<double>(n);
  }
  std::vector<double> out(n_out);
  for (std::size_t i = 0; i < n_out; ++i) {
    const double th = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n_out);
    double v = 0.0;
    for (std::size_t k = 0; k <= kmax; ++k) {
      const double kt = static_cast<double>(k) * th;
      v += ca[k] * std::cos(kt) + sa[k] * std::sin(kt);
    }
    out[i] = v;
  }
  return out;
}

}  // namespace levelcurve
