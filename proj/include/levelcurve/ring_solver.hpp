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
#include <string>
#include <vector>

#include "levelcurve/stencil.hpp"
#include "levelcurve/support_geometry.hpp"

namespace levelcurve {

enum class EquationKind { PLaplace, MinimalSurface, HarmonicAxisym3D };

/// The transformed equation h_tt = sum (c delta_ij + h_ti h_tj) b^{ij} with
/// c = kappa + weight * h_t^2.
struct EquationSpec {
  EquationKind kind = EquationKind::PLaplace;
  double p = 2.0;

  static EquationSpec p_laplace(double p);
  static EquationSpec minimal_surface();
  static EquationSpec harmonic_axisym_3d();

  double kappa() const noexcept { return kind == EquationKind::MinimalSurface ? 1.0 : 0.0; }
  double weight() const noexcept {
    return kind == EquationKind::PLaplace ? 1.0 / (p - 1.0) : 1.0;
  }
  std::string name() const;
};

struct NewtonOptions {
  double tol = 1e-10;
  int max_iter = 50;
  double damping = 0.5;
  bool convexity_guard = true;
};

/// Dirichlet problem on a convex ring: the outer body is the level t = 0 and
/// the inner body the level t = 1 (or the reverse when inner_at_zero).
class RingProblem {
 public:
  static RingProblem planar(EquationSpec eq, const CircleSupport& outer, const CircleSupport& inner,
                            std::size_t n_t, NewtonOptions newton = {});
  static RingProblem axisymmetric(EquationSpec eq, const MeridianSupport& outer,
                                  const MeridianSupport& inner, std::size_t n_t,
                                  NewtonOptions newton = {});

  const EquationSpec& equation() const noexcept { return eq_; }
  const ThetaGrid& grid() const noexcept { return grid_; }
  bool axisymmetric() const noexcept { return grid_.topology() == ThetaTopology::Meridian; }
  const std::vector<double>& h_outer() const noexcept { return outer_; }
  const std::vector<double>& h_inner() const noexcept { return inner_; }
  std::size_t n_t() const noexcept { return n_t_; }
  double dt() const noexcept { return 1.0 / static_cast<double>(n_t_ - 1); }
  const NewtonOptions& newton() const noexcept { return newton_; }
  RingProblem with_newton(NewtonOptions newton) const;

  /// Same ring with the height relabelled t -> 1 - t.
  RingProblem reversed() const;
  bool inner_at_zero() const noexcept { return inner_at_zero_; }
  /// Boundary rows in grid order.
  const std::vector<double>& row_at_zero() const noexcept { return inner_at_zero_ ? inner_ : outer_; }
  const std::vector<double>& row_at_one() const noexcept { return inner_at_zero_ ? outer_ : inner_; }

 private:
  RingProblem(EquationSpec eq, ThetaGrid grid, std::vector<double> outer, std::vector<double> inner,
              std::size_t n_t, NewtonOptions newton);

  EquationSpec eq_;
  ThetaGrid grid_;
  std::vector<double> outer_;
  std::vector<double> inner_;
  std::size_t n_t_;
  NewtonOptions newton_;
  bool inner_at_zero_ = false;
};

/// h(theta_j, t_k) and derived fields, stored row by row: index k * n_theta + j.
struct SupportSolution {
  EquationSpec equation;
  ThetaGrid grid;
  std::size_t n_theta = 0;
  std::size_t n_t = 0;
  bool inner_at_zero = false;
  std::vector<double> h;
  std::vector<double> h_t;
  std::vector<double> h_ttheta;
  std::vector<double> h_tt;
  std::vector<double> b_meridian;
  /// Empty for planar problems.
  std::vector<double> b_parallel;
  double residual_norm = 0.0;
  int iterations = 0;

  double t(std::size_t k) const noexcept {
    return static_cast<double>(k) / static_cast<double>(n_t - 1);
  }
  std::size_t index(std::size_t j, std::size_t k) const noexcept { return k * n_theta + j; }
  bool axisymmetric() const noexcept { return !b_parallel.empty(); }
  double b_max(std::size_t j, std::size_t k) const noexcept;
};

/// Residual on interior rows, (n_t - 2) * n_theta entries, for a full grid
/// h (n_t * n_theta entries, boundary rows included). Throws
/// NonConvexIterate when the guard is on and a radius is <= the floor.
std::vector<double> residual(std::span<const double> h_grid, const RingProblem& problem);

/// Damped Newton from the linear interpolant of the boundary rows.
SupportSolution solve(const RingProblem& problem);

/// Derived fields for given grid values (no solve). residual_norm is filled
/// from the discrete residual.
SupportSolution solution_from_values(const RingProblem& problem, std::vector<double> h_grid);

/// Row index of the grid maximum of |grad u| = -1/h_t (sign-adjusted for
/// reversed problems).
std::size_t gradient_argmax_row(const SupportSolution& sol);

}  // namespace levelcurve
