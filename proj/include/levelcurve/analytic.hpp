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

#include <cmath>
#include <cstddef>
#include <vector>

#include "levelcurve/profile_analysis.hpp"

namespace levelcurve {

/// Radial solution of the p-Laplace equation in R^n on the ring
/// r_inner < |x| < r_outer with u = 0 outside and u = 1 inside:
/// u is affine in r^gamma, gamma = (p - n)/(p - 1), or in log r when p = n.
class RadialRing {
 public:
  RadialRing(int n, double p, double r_outer, double r_inner);

  int n() const noexcept { return n_; }
  double p() const noexcept { return p_; }
  double r_outer() const noexcept { return r0_; }
  double r_inner() const noexcept { return r1_; }

  double u(double r) const;
  /// Radius of the level set {u = t}.
  double radius(double t) const;
  double grad(double r) const;
  double k1(double r) const { return 1.0 / r; }
  /// |grad u| / k_1 on the level t; affine in t.
  double max_grad_over_k1(double t) const;
  double profile(ProfileKind kind, double t) const;
  /// h(theta, t) = radius(t) on every node, row by row.
  std::vector<double> support_samples(std::size_t nodes, std::size_t n_t) const;

 private:
  int n_;
  double p_;
  double r0_;
  double r1_;
  double gamma_;
  double a0_;  // r_outer^gamma, or log r_outer when p = n
  double d_;   // r_inner^gamma - r_outer^gamma, or the log difference
};

/// The p-Green normalization range: rejects p > n with OutOfRange.
RadialRing exact_radial_green(int n, double p, double r_outer, double r_inner);

struct Circle {
  double cx = 0.0;
  double cy = 0.0;
  double r = 1.0;
};

/// Harmonic function on the ring between two non-concentric circles
/// (p = 2, n = 2), through the Moebius map sending both to concentric ones.
class EccentricHarmonic {
 public:
  EccentricHarmonic(const Circle& outer, const Circle& inner);

  double u(double x, double y) const;
  double grad(double x, double y) const;
  /// Level curve {u = t} (a circle).
  Circle level_circle(double t) const;
  double curvature(double t) const { return 1.0 / level_circle(t).r; }
  double profile(ProfileKind kind, double t) const;
  /// Support samples h(theta_j) of every level curve, row by row.
  std::vector<double> support_samples(std::size_t n_theta, std::size_t n_t) const;
  bool concentric() const noexcept { return concentric_; }

 private:
  // Work frame: outer centre at the origin, inner centre on the positive x axis.
  void to_frame(double x, double y, double& xf, double& yf) const;
  double max_grad_on_level(double t) const;

  Circle outer_;
  Circle inner_;
  bool concentric_ = false;
  double d_ = 0.0;
  double cos_phi_ = 1.0;
  double sin_phi_ = 0.0;
  double a_ = 0.0;
  double b_ = 0.0;
  double log_rho0_ = 0.0;
  double log_rho1_ = 0.0;
};

EccentricHarmonic exact_eccentric_harmonic(const Circle& outer, const Circle& inner);

/// Radial minimal graph over the ring with u = u_outer on |x| = r_outer and
/// u = u_inner on |x| = r_inner: u is a catenoid piece,
/// u' = -s c / sqrt(r^2 - c^2) with s the sign of the height difference.
class RadialMinimal {
 public:
  RadialMinimal(double r_outer, double r_inner, double u_outer = 0.0, double u_inner = 1.0);

  double catenoid_parameter() const noexcept { return c_; }
  double u(double r) const;
  double du_dr(double r) const;
  double grad(double r) const { return c_ / std::sqrt(r * r - c_ * c_); }
  /// Radius of the level {u = u_outer + t (u_inner - u_outer)}.
  double radius(double t) const;
  double profile(ProfileKind kind, double t) const;
  std::vector<double> support_samples(std::size_t nodes, std::size_t n_t) const;

 private:
  double r0_;
  double r1_;
  double u0_;
  double u1_;
  double c_ = 0.0;
  double acosh0_ = 0.0;
};

RadialMinimal exact_radial_minimal(double r_outer, double r_inner);

template <class Handle>
HeightProfile profile_from_handle(const Handle& handle, ProfileKind kind, std::size_t n_t) {
  return sample_profile(kind, n_t, [&](double t) { return handle.profile(kind, t); });
}

}  // namespace levelcurve
