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

#include "levelcurve/analytic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "levelcurve/errors.hpp"

namespace levelcurve {

namespace {

constexpr double kPi = std::numbers::pi;

void check_radii(double r_outer, double r_inner) {
  if (!(r_inner > 0.0) || !(r_outer > r_inner) || !std::isfinite(r_outer)) {
    std::ostringstream msg;
    msg << "radii must satisfy 0 < r_inner < r_outer, got r_outer=" << r_outer << " r_inner=" << r_inner;
    throw Error(ErrorCode::InvalidGeometry, msg.str());
  }
}

std::vector<double> constant_rows(std::size_t nodes, std::size_t n_t, const auto& radius) {
  std::vector<double> h(nodes * n_t);
  for (std::size_t k = 0; k < n_t; ++k) {
    const double r = radius(static_cast<double>(k) / static_cast<double>(n_t - 1));
    for (std::size_t j = 0; j < nodes; ++j) h[k * nodes + j] = r;
  }
  return h;
}

}  // namespace

RadialRing::RadialRing(int n, double p, double r_outer, double r_inner)
    : n_(n), p_(p), r0_(r_outer), r1_(r_inner) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 2");
  if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorCode::OutOfRange, "p must satisfy 1 < p < inf");
  check_radii(r_outer, r_inner);
  gamma_ = (p - n) / (p - 1.0);
  if (p == static_cast<double>(n)) {
    a0_ = std::log(r0_);
    d_ = std::log(r1_) - a0_;
  } else {
    a0_ = std::pow(r0_, gamma_);
    d_ = std::pow(r1_, gamma_) - a0_;
  }
}

double RadialRing::u(double r) const {
  if (gamma_ == 0.0) return (std::log(r) - a0_) / d_;
  return (std::pow(r, gamma_) - a0_) / d_;
}

double RadialRing::radius(double t) const {
  if (gamma_ == 0.0) return std::exp(a0_ + t * d_);
  return std::pow(a0_ + t * d_, 1.0 / gamma_);
}

double RadialRing::grad(double r) const {
  if (gamma_ == 0.0) return 1.0 / (r * std::abs(d_));
  return std::abs(gamma_ * std::pow(r, gamma_ - 1.0) / d_);
}

double RadialRing::max_grad_over_k1(double t) const {
  if (gamma_ == 0.0) return 1.0 / std::abs(d_);
  return std::abs(gamma_) * (a0_ + t * d_) / std::abs(d_);
}

double RadialRing::profile(ProfileKind kind, double t) const {
  switch (kind) {
    case ProfileKind::MaxGradOverK1: return max_grad_over_k1(t);
    case ProfileKind::MinLogK1: return -std::log(radius(t));
    case ProfileKind::Gauss2d: {
      if (n_ != 2) throw Error(ErrorCode::InvalidArgument, "gauss2d is defined for n = 2 only");
      const double r = radius(t);
      return std::pow(grad(r), 3.0 - 2.0 * p_) / r;
    }
  }
  return 0.0;
}

std::vector<double> RadialRing::support_samples(std::size_t nodes, std::size_t n_t) const {
  return constant_rows(nodes, n_t, [this](double t) { return radius(t); });
}

RadialRing exact_radial_green(int n, double p, double r_outer, double r_inner) {
  if (p > static_cast<double>(n)) {
    throw Error(ErrorCode::OutOfRange,
                "p-Green normalization needs p <= n, got p=" + std::to_string(p) + " n=" + std::to_string(n));
  }
  return RadialRing(n, p, r_outer, r_inner);
}

EccentricHarmonic::EccentricHarmonic(const Circle& outer, const Circle& inner) : outer_(outer), inner_(inner) {
  if (!(outer.r > 0.0) || !(inner.r > 0.0)) throw Error(ErrorCode::InvalidGeometry, "radii must be positive");
  const double dx = inner.cx - outer.cx, dy = inner.cy - outer.cy;
  d_ = std::hypot(dx, dy);
  if (!(d_ + inner.r < outer.r)) {
    throw Error(ErrorCode::GeometryNotNested, "inner circle is not strictly inside the outer circle");
  }
  if (d_ <= 1e-14 * outer.r) {
    concentric_ = true;
    log_rho0_ = std::log(outer.r);
    log_rho1_ = std::log(inner.r);
    return;
  }
  cos_phi_ = dx / d_;
  sin_phi_ = dy / d_;
  // Common inverse points: a b = R0^2 and (a - d)(b - d) = R1^2.
  const double r0 = outer.r, r1 = inner.r;
  const double s = (r0 * r0 + d_ * d_ - r1 * r1) / d_;
  const double big = 0.5 * (s + std::sqrt(s * s - 4.0 * r0 * r0));
  b_ = big;
  a_ = r0 * r0 / big;
  log_rho0_ = std::log(std::abs(r0 - a_) / std::abs(r0 - b_));
  log_rho1_ = std::log(std::abs(d_ + r1 - a_) / std::abs(d_ + r1 - b_));
}

void EccentricHarmonic::to_frame(double x, double y, double& xf, double& yf) const {
  const double px = x - outer_.cx, py = y - outer_.cy;
  xf = cos_phi_ * px + sin_phi_ * py;
  yf = -sin_phi_ * px + cos_phi_ * py;
}

double EccentricHarmonic::u(double x, double y) const {
  double xf, yf;
  to_frame(x, y, xf, yf);
  if (concentric_) return (std::log(std::hypot(xf, yf)) - log_rho0_) / (log_rho1_ - log_rho0_);
  const double lw = std::log(std::hypot(xf - a_, yf) / std::hypot(xf - b_, yf));
  return (lw - log_rho0_) / (log_rho1_ - log_rho0_);
}

double EccentricHarmonic::grad(double x, double y) const {
  double xf, yf;
  to_frame(x, y, xf, yf);
  const double l = std::abs(log_rho1_ - log_rho0_);
  if (concentric_) return 1.0 / (std::hypot(xf, yf) * l);
  return std::abs(a_ - b_) / (std::hypot(xf - a_, yf) * std::hypot(xf - b_, yf) * l);
}

Circle EccentricHarmonic::level_circle(double t) const {
  const double ls = log_rho0_ + t * (log_rho1_ - log_rho0_);
  if (concentric_) return {outer_.cx, outer_.cy, std::exp(ls)};
  const double s = std::exp(ls);
  const double s2 = s * s;
  const double c = (a_ - s2 * b_) / (1.0 - s2);
  const double rho = s * std::abs(a_ - b_) / std::abs(1.0 - s2);
  return {outer_.cx + c * cos_phi_, outer_.cy + c * sin_phi_, rho};
}

double EccentricHarmonic::max_grad_on_level(double t) const {
  const double l = std::abs(log_rho1_ - log_rho0_);
  if (concentric_) return 1.0 / (std::exp(log_rho0_ + t * (log_rho1_ - log_rho0_)) * l);
  const double s = std::exp(log_rho0_ + t * (log_rho1_ - log_rho0_));
  const double s2 = s * s;
  const double c = (a_ - s2 * b_) / (1.0 - s2);
  const double rho = s * std::abs(a_ - b_) / std::abs(1.0 - s2);
  // On |z - a| = s |z - b| the gradient is largest where |z - b| is smallest.
  const double near = std::abs(c - b_) - rho;
  return std::abs(a_ - b_) / (s * near * near * l);
}

double EccentricHarmonic::profile(ProfileKind kind, double t) const {
  const double rho = level_circle(t).r;
  switch (kind) {
    case ProfileKind::MaxGradOverK1: return max_grad_on_level(t) * rho;
    case ProfileKind::MinLogK1: return -std::log(rho);
    case ProfileKind::Gauss2d: return 1.0 / (max_grad_on_level(t) * rho);
  }
  return 0.0;
}

std::vector<double> EccentricHarmonic::support_samples(std::size_t n_theta, std::size_t n_t) const {
  std::vector<double> h(n_theta * n_t);
  for (std::size_t k = 0; k < n_t; ++k) {
    const Circle c = level_circle(static_cast<double>(k) / static_cast<double>(n_t - 1));
    for (std::size_t j = 0; j < n_theta; ++j) {
      const double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_theta);
      h[k * n_theta + j] = c.r + c.cx * std::cos(th) + c.cy * std::sin(th);
    }
  }
  return h;
}

EccentricHarmonic exact_eccentric_harmonic(const Circle& outer, const Circle& inner) {
  return EccentricHarmonic(outer, inner);
}

RadialMinimal::RadialMinimal(double r_outer, double r_inner, double u_outer, double u_inner)
    : r0_(r_outer), r1_(r_inner), u0_(u_outer), u1_(u_inner) {
  check_radii(r_outer, r_inner);
  const double height = std::abs(u_inner - u_outer);
  if (!(height > 0.0) || !std::isfinite(height)) {
    throw Error(ErrorCode::InvalidArgument, "boundary values must differ");
  }
  // g(c) = c (acosh(R0/c) - acosh(R1/c)) increases on (0, R1].
  auto g = [&](double c) { return c * (std::acosh(r0_ / c) - std::acosh(r1_ / c)); };
  if (g(r1_) < height) {
    std::ostringstream msg;
    msg << "no radial minimal graph of height " << height << " over the ring (" << r1_ << ", " << r0_
        << "); the largest attainable height is " << g(r1_);
    throw Error(ErrorCode::NoRadialSolution, msg.str());
  }
  double lo = 0.0, hi = r1_;
  for (int i = 0; i < 200 && hi - lo > 1e-17 * r1_; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= 0.0 || g(mid) < height) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  c_ = 0.5 * (lo + hi);
  acosh0_ = std::acosh(r0_ / c_);
}

double RadialMinimal::u(double r) const {
  const double s = u1_ > u0_ ? 1.0 : -1.0;
  return u0_ + s * c_ * (acosh0_ - std::acosh(r / c_));
}

double RadialMinimal::du_dr(double r) const {
  const double s = u1_ > u0_ ? 1.0 : -1.0;
  return -s * c_ / std::sqrt(r * r - c_ * c_);
}

double RadialMinimal::radius(double t) const {
  const double height = std::abs(u1_ - u0_);
  return c_ * std::cosh(acosh0_ - t * height / c_);
}

double RadialMinimal::profile(ProfileKind kind, double t) const {
  const double r = radius(t);
  switch (kind) {
    case ProfileKind::MaxGradOverK1: return grad(r) * r;
    case ProfileKind::MinLogK1: return -std::log(r);
    case ProfileKind::Gauss2d: break;
  }
  throw Error(ErrorCode::InvalidArgument, "gauss2d is defined for p-Laplace solutions only");
}

std::vector<double> RadialMinimal::support_samples(std::size_t nodes, std::size_t n_t) const {
  return constant_rows(nodes, n_t, [this](double t) { return radius(t); });
}

RadialMinimal exact_radial_minimal(double r_outer, double r_inner) { return RadialMinimal(r_outer, r_inner); }

}  // namespace levelcurve
