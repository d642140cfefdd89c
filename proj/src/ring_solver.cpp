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

#include "levelcurve/ring_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "levelcurve/block_tridiagonal.hpp"
#include "levelcurve/errors.hpp"

namespace levelcurve {

EquationSpec EquationSpec::p_laplace(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::InvalidProblem, "p must satisfy 1 < p < inf, got " + std::to_string(p));
  }
  return {EquationKind::PLaplace, p};
}

EquationSpec EquationSpec::minimal_surface() { return {EquationKind::MinimalSurface, 2.0}; }

EquationSpec EquationSpec::harmonic_axisym_3d() { return {EquationKind::HarmonicAxisym3D, 2.0}; }

std::string EquationSpec::name() const {
  switch (kind) {
    case EquationKind::PLaplace: return "pLaplace";
    case EquationKind::MinimalSurface: return "minimalSurface";
    case EquationKind::HarmonicAxisym3D: return "harmonicAxisym3D";
  }
  return "unknown";
}

RingProblem::RingProblem(EquationSpec eq, ThetaGrid grid, std::vector<double> outer,
                         std::vector<double> inner, std::size_t n_t, NewtonOptions newton)
    : eq_(eq), grid_(grid), outer_(std::move(outer)), inner_(std::move(inner)), n_t_(n_t), newton_(newton) {
  if (eq_.kind == EquationKind::PLaplace) eq_ = EquationSpec::p_laplace(eq_.p);
  if (n_t_ < 5) throw Error(ErrorCode::InvalidProblem, "n_t must be at least 5");
  if (!(newton_.tol > 0.0) || newton_.max_iter < 1 || !(newton_.damping > 0.0 && newton_.damping < 1.0)) {
    throw Error(ErrorCode::InvalidProblem, "invalid Newton options");
  }
  bool identical = true;
  for (std::size_t j = 0; j < outer_.size(); ++j) {
    if (outer_[j] != inner_[j]) identical = false;
    if (!(inner_[j] < outer_[j])) {
      std::ostringstream msg;
      msg << "inner body is not strictly inside the outer body (direction " << j << ": inner "
          << inner_[j] << " >= outer " << outer_[j] << ")";
      throw Error(ErrorCode::InvalidProblem, identical ? "inner and outer bodies coincide" : msg.str());
    }
  }
  auto convex = [&](const std::vector<double>& h, const char* which) {
    PrincipalRadii b = radii_unchecked(grid_, h);
    if (!check_strict_convexity(b)) {
      throw Error(ErrorCode::NonConvexBody, std::string(which) + " boundary is not strictly convex");
    }
  };
  convex(outer_, "outer");
  convex(inner_, "inner");
}

RingProblem RingProblem::planar(EquationSpec eq, const CircleSupport& outer, const CircleSupport& inner,
                                std::size_t n_t, NewtonOptions newton) {
  if (eq.kind == EquationKind::HarmonicAxisym3D) {
    throw Error(ErrorCode::InvalidProblem, "harmonicAxisym3D needs meridian supports");
  }
  std::vector<double> in = inner.values();
  if (inner.n_theta() != outer.n_theta()) in = resample_periodic(inner.values(), outer.n_theta());
  return RingProblem(eq, outer.grid(), outer.values(), std::move(in), n_t, newton);
}

RingProblem RingProblem::axisymmetric(EquationSpec eq, const MeridianSupport& outer,
                                      const MeridianSupport& inner, std::size_t n_t, NewtonOptions newton) {
  if (inner.m_theta() != outer.m_theta()) {
    throw Error(ErrorCode::InvalidProblem, "meridian supports must share the grid size");
  }
  return RingProblem(eq, outer.grid(), outer.values(), inner.values(), n_t, newton);
}

RingProblem RingProblem::with_newton(NewtonOptions newton) const {
  RingProblem out = *this;
  out.newton_ = newton;
  return out;
}

RingProblem RingProblem::reversed() const {
  RingProblem out = *this;
  out.inner_at_zero_ = !inner_at_zero_;
  return out;
}

double SupportSolution::b_max(std::size_t j, std::size_t k) const noexcept {
  const std::size_t i = index(j, k);
  return b_parallel.empty() ? b_meridian[i] : std::max(b_meridian[i], b_parallel[i]);
}

namespace {

/// Discretized operator on a fixed problem. Orientation sign is +1 when
/// h decreases in t (outer body at t = 0).
class DiscreteSystem {
 public:
  explicit DiscreteSystem(const RingProblem& pb)
      : pb_(pb),
        grid_(pb.grid()),
        n_(grid_.nodes()),
        nt_(pb.n_t()),
        dt_(pb.dt()),
        kappa_(pb.equation().kappa()),
        weight_(pb.equation().weight()),
        three_d_(pb.axisymmetric()),
        sign_(pb.inner_at_zero() ? -1.0 : 1.0) {
    cot_.assign(n_, 0.0);
    if (three_d_) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (!grid_.is_pole(j)) cot_[j] = std::cos(grid_.theta(j)) / std::sin(grid_.theta(j));
      }
    }
  }

  std::size_t unknowns() const noexcept { return (nt_ - 2) * n_; }

  std::vector<double> initial_guess() const {
    std::vector<double> h(nt_ * n_);
    const auto& a = pb_.row_at_zero();
    const auto& b = pb_.row_at_one();
    for (std::size_t k = 0; k < nt_; ++k) {
      const double t = static_cast<double>(k) * dt_;
      for (std::size_t j = 0; j < n_; ++j) h[k * n_ + j] = (1.0 - t) * a[j] + t * b[j];
    }
    return h;
  }

  /// True if every interior radius exceeds the floor and sign * h_t < 0.
  bool admissible(std::span<const double> h) const {
    for (std::size_t k = 1; k + 1 < nt_; ++k) {
      auto row = h.subspan(k * n_, n_);
      for (std::size_t j = 0; j < n_; ++j) {
        const double ht = (h[(k + 1) * n_ + j] - h[(k - 1) * n_ + j]) / (2.0 * dt_);
        if (!(sign_ * ht < 0.0)) return false;
        if (!(row[j] + grid_.second_at(row, j) > kRadiusFloor)) return false;
        if (three_d_ && !grid_.is_pole(j) && !(row[j] + grid_.first_at(row, j) * cot_[j] > kRadiusFloor)) {
          return false;
        }
      }
    }
    return true;
  }

  /// Residual on interior rows; fills the Jacobian if requested.
  std::vector<double> evaluate(std::span<const double> h, BlockTridiagonal* jac) const {
    std::vector<double> res(unknowns());
    std::vector<double> htr(n_);
    const auto& w1 = grid_.first_weights();
    const auto& w2 = grid_.second_weights();
    const double idt2 = 1.0 / (dt_ * dt_);
    const double i2dt = 1.0 / (2.0 * dt_);
    std::vector<Eigen::Triplet<double>> lo, up;
    for (std::size_t k = 1; k + 1 < nt_; ++k) {
      const std::size_t r = k - 1;
      auto row = h.subspan(k * n_, n_);
      for (std::size_t j = 0; j < n_; ++j) htr[j] = (h[(k + 1) * n_ + j] - h[(k - 1) * n_ + j]) * i2dt;
      if (jac) {
        lo.clear();
        up.clear();
      }
      for (std::size_t j = 0; j < n_; ++j) {
        const double ht = htr[j];
        const double htt = (h[(k + 1) * n_ + j] - 2.0 * row[j] + h[(k - 1) * n_ + j]) * idt2;
        const double htth = grid_.first_at(htr, j);
        const double bm = row[j] + grid_.second_at(row, j);
        const bool pole = grid_.is_pole(j);
        const double bp = three_d_ ? (pole ? bm : row[j] + grid_.first_at(row, j) * cot_[j]) : 0.0;
        const double c = kappa_ + weight_ * ht * ht;
        double rv = htt - (c + htth * htth) / bm;
        if (three_d_) rv -= c / bp;
        res[r * n_ + j] = rv;
        if (!jac) continue;

        const double dc = 2.0 * weight_ * ht;
        const double d_ht = -dc / bm - (three_d_ ? dc / bp : 0.0);
        const double d_htth = -2.0 * htth / bm;
        double d_bm = (c + htth * htth) / (bm * bm);
        const double d_bp = three_d_ ? c / (bp * bp) : 0.0;
        const auto jj = static_cast<Eigen::Index>(j);
        auto& dg = jac->diag[r];
        dg(jj, jj) += -2.0 * idt2;
        if (three_d_ && pole) d_bm += d_bp;
        dg(jj, jj) += d_bm;
        if (three_d_ && !pole) dg(jj, jj) += d_bp;
        for (int o = -ThetaGrid::kHalfWidth; o <= ThetaGrid::kHalfWidth; ++o) {
          const auto s = static_cast<std::size_t>(o + ThetaGrid::kHalfWidth);
          const auto col = static_cast<Eigen::Index>(grid_.neighbor(j, o));
          dg(jj, col) += d_bm * w2[s];
          if (three_d_ && !pole) dg(jj, col) += d_bp * w1[s] * cot_[j];
          if (w1[s] != 0.0) {
            if (k + 2 < nt_) up.emplace_back(jj, col, d_htth * w1[s] * i2dt);
            if (k > 1) lo.emplace_back(jj, col, -d_htth * w1[s] * i2dt);
          }
        }
        if (k + 2 < nt_) up.emplace_back(jj, jj, idt2 + d_ht * i2dt);
        if (k > 1) lo.emplace_back(jj, jj, idt2 - d_ht * i2dt);
      }
      if (jac) {
        // setFromTriplets sums duplicates, which merges reflected neighbours.
        if (k > 1) jac->lower[r].setFromTriplets(lo.begin(), lo.end());
        if (k + 2 < nt_) jac->upper[r].setFromTriplets(up.begin(), up.end());
      }
    }
    return res;
  }

  const RingProblem& problem() const noexcept { return pb_; }
  double sign() const noexcept { return sign_; }

 private:
  const RingProblem& pb_;
  ThetaGrid grid_;
  std::size_t n_;
  std::size_t nt_;
  double dt_;
  double kappa_;
  double weight_;
  bool three_d_;
  double sign_;
  std::vector<double> cot_;
};

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
    m = std::max(m, std::abs(x));
  }
  return m;
}

}  // namespace

std::vector<double> residual(std::span<const double> h_grid, const RingProblem& problem) {
  DiscreteSystem sys(problem);
  if (h_grid.size() != problem.n_t() * problem.grid().nodes()) {
    throw Error(ErrorCode::InvalidArgument, "grid size does not match the problem");
  }
  if (problem.newton().convexity_guard) {
    const std::size_t n = problem.grid().nodes();
    for (std::size_t k = 1; k + 1 < problem.n_t(); ++k) {
      PrincipalRadii b = radii_unchecked(problem.grid(), h_grid.subspan(k * n, n));
      if (!check_strict_convexity(b)) {
        throw Error(ErrorCode::NonConvexIterate,
                    "level set at row " + std::to_string(k) + " is not strictly convex");
      }
    }
  }
  return sys.evaluate(h_grid, nullptr);
}

SupportSolution solve(const RingProblem& problem) {
  DiscreteSystem sys(problem);
  const NewtonOptions& opt = problem.newton();
  const std::size_t n = problem.grid().nodes();
  const std::size_t nt = problem.n_t();
  std::vector<double> h = sys.initial_guess();
  std::vector<double> f = sys.evaluate(h, nullptr);
  double norm = sup_norm(f);
  int it = 0;
  while (norm > opt.tol) {
    if (it >= opt.max_iter) {
      std::ostringstream msg;
      msg << "Newton iteration cap " << opt.max_iter << " reached with residual " << norm;
      throw NewtonError(ErrorCode::NewtonDiverged, msg.str(), norm, it);
    }
    BlockTridiagonal jac(n, nt - 2);
    sys.evaluate(h, &jac);
    Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(f.data(), static_cast<Eigen::Index>(f.size()));
    Eigen::VectorXd delta = solve_block_tridiagonal(jac, rhs);

    double lambda = 1.0;
    bool accepted = false;
    bool guard_only = true;
    std::vector<double> trial(h.size());
    while (lambda > 1e-10) {
      std::copy(h.begin(), h.end(), trial.begin());
      for (std::size_t i = 0; i < static_cast<std::size_t>(delta.size()); ++i) trial[n + i] += lambda * delta[static_cast<Eigen::Index>(i)];
      if (opt.convexity_guard && !sys.admissible(trial)) {
        lambda *= opt.damping;
        continue;
      }
      std::vector<double> ft = sys.evaluate(trial, nullptr);
      const double nt_norm = sup_norm(ft);
      if (nt_norm < (1.0 - 1e-4 * lambda) * norm) {
        h.swap(trial);
        f.swap(ft);
        norm = nt_norm;
        accepted = true;
        break;
      }
      guard_only = false;
      lambda *= opt.damping;
    }
    ++it;
    if (!accepted) {
      std::ostringstream msg;
      if (guard_only) {
        msg << "line search could not find a convex iterate (residual " << norm << ")";
        throw NewtonError(ErrorCode::NonConvexIterate, msg.str(), norm, it);
      }
      msg << "line search stalled with residual " << norm << " after " << it << " iterations";
      throw NewtonError(ErrorCode::NewtonDiverged, msg.str(), norm, it);
    }
  }
  SupportSolution sol = solution_from_values(problem, std::move(h));
  sol.iterations = it;
  return sol;
}

SupportSolution solution_from_values(const RingProblem& problem, std::vector<double> h_grid) {
  const ThetaGrid& grid = problem.grid();
  const std::size_t n = grid.nodes();
  const std::size_t nt = problem.n_t();
  if (h_grid.size() != n * nt) throw Error(ErrorCode::InvalidArgument, "grid size does not match the problem");
  DiscreteSystem sys(problem);
  SupportSolution sol{problem.equation(), grid, n, nt, problem.inner_at_zero(), {}, {}, {}, {}, {}, {}, 0.0, 0};
  sol.residual_norm = sup_norm(sys.evaluate(h_grid, nullptr));
  sol.h = std::move(h_grid);
  const auto& h = sol.h;
  const double dt = problem.dt();
  sol.h_t.resize(n * nt);
  sol.h_tt.resize(n * nt);
  sol.h_ttheta.resize(n * nt);
  sol.b_meridian.resize(n * nt);
  if (problem.axisymmetric()) sol.b_parallel.resize(n * nt);
  auto at = [&](std::size_t j, std::size_t k) { return h[k * n + j]; };
  for (std::size_t k = 0; k < nt; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      double ht, htt;
      if (k == 0) {
        ht = (-3.0 * at(j, 0) + 4.0 * at(j, 1) - at(j, 2)) / (2.0 * dt);
        htt = (2.0 * at(j, 0) - 5.0 * at(j, 1) + 4.0 * at(j, 2) - at(j, 3)) / (dt * dt);
      } else if (k + 1 == nt) {
        ht = (3.0 * at(j, k) - 4.0 * at(j, k - 1) + at(j, k - 2)) / (2.0 * dt);
        htt = (2.0 * at(j, k) - 5.0 * at(j, k - 1) + 4.0 * at(j, k - 2) - at(j, k - 3)) / (dt * dt);
      } else {
        ht = (at(j, k + 1) - at(j, k - 1)) / (2.0 * dt);
        htt = (at(j, k + 1) - 2.0 * at(j, k) + at(j, k - 1)) / (dt * dt);
      }
      sol.h_t[k * n + j] = ht;
      sol.h_tt[k * n + j] = htt;
    }
    std::span<const double> trow(sol.h_t.data() + k * n, n);
    std::span<const double> hrow(h.data() + k * n, n);
    PrincipalRadii b = radii_unchecked(grid, hrow);
    for (std::size_t j = 0; j < n; ++j) {
      sol.h_ttheta[k * n + j] = grid.first_at(trow, j);
      sol.b_meridian[k * n + j] = b.b_meridian[j];
      if (!b.b_parallel.empty()) sol.b_parallel[k * n + j] = b.b_parallel[j];
    }
  }
  return sol;
}

std::size_t gradient_argmax_row(const SupportSolution& sol) {
  const double sign = sol.inner_at_zero ? -1.0 : 1.0;
  double best = -std::numeric_limits<double>::infinity();
  std::size_t row = 0;
  for (std::size_t k = 0; k < sol.n_t; ++k) {
    for (std::size_t j = 0; j < sol.n_theta; ++j) {
      const double g = -1.0 / (sign * sol.h_t[sol.index(j, k)]);
      if (g > best) {
        best = g;
        row = k;
      }
    }
  }
  return row;
}

}  // namespace levelcurve
