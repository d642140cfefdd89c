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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "levelcurve/stencil.hpp"

namespace levelcurve {

inline constexpr double kRadiusFloor = 1e-10;

/// Support function sampled at theta_j = 2 pi j / N on the unit circle.
///
/// Only the grid size is validated on construction; convexity is checked by
/// principal_radius_2d, which reports NonConvexBody.
class CircleSupport {
 public:
  explicit CircleSupport(std::vector<double> values);

  std::size_t n_theta() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  ThetaGrid grid() const { return ThetaGrid(ThetaTopology::Circle, values_.size()); }

 private:
  std::vector<double> values_;
};

/// Support function of a body of revolution, sampled along a meridian at
/// theta_j = pi j / M, j = 0..M (theta measured from the symmetry axis).
class MeridianSupport {
 public:
  explicit MeridianSupport(std::vector<double> values);

  /// M, the number of intervals.
  std::size_t m_theta() const noexcept { return values_.size() - 1; }
  const std::vector<double>& values() const noexcept { return values_; }
  ThetaGrid grid() const { return ThetaGrid(ThetaTopology::Meridian, m_theta()); }

 private:
  std::vector<double> values_;
};

struct PrincipalRadii {
  std::vector<double> b_meridian;
  /// Empty for planar curves.
  std::vector<double> b_parallel;

  bool planar() const noexcept { return b_parallel.empty(); }
  std::size_t size() const noexcept { return b_meridian.size(); }
  double b_max(std::size_t j) const noexcept;
  double min_entry() const noexcept;
};

/// b = h + h'' with the grid's fourth-order stencil. Throws NonConvexBody if
/// any radius is <= eps.
PrincipalRadii principal_radius_2d(const CircleSupport& h, double eps = kRadiusFloor);

/// b_mer = h + h_thth and b_par = h + h_th cot(theta); b_par = b_mer at
/// the poles.
PrincipalRadii principal_radii_axisym(const MeridianSupport& h, double eps = kRadiusFloor);

/// Radii of one theta row without the convexity check.
PrincipalRadii radii_unchecked(const ThetaGrid& grid, std::span<const double> h);

bool check_strict_convexity(const PrincipalRadii& b, double eps = kRadiusFloor);

CircleSupport support_of_circle(double r, std::size_t n_theta);
CircleSupport support_of_ellipse(double a, double b, std::size_t n_theta);
/// Circle of radius r centred at (cx, cy).
CircleSupport support_of_offset_circle(double r, double cx, double cy, std::size_t n_theta);

MeridianSupport support_of_sphere(double r, std::size_t m_theta);
/// Spheroid with equatorial semi-axis a and polar semi-axis c.
MeridianSupport support_of_spheroid(double a, double c, std::size_t m_theta);

/// Trigonometric interpolation of N periodic samples onto n_out points.
std::vector<double> resample_periodic(std::span<const double> values, std::size_t n_out);

}  // namespace levelcurve
