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
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace levelcurve {

struct SupportSolution;

enum class ProfileKind {
  /// max over the level set of |grad u| / k_1; convexity target.
  MaxGradOverK1,
  /// min over the level set of log k_1; concavity target.
  MinLogK1,
  /// min over the level curve of |grad u|^(3-2p) k, planar only; concavity target.
  Gauss2d,
};

enum class CheckKind { Convex, Concave, Affine, EndpointBound };

std::string profile_kind_name(ProfileKind kind);
ProfileKind parse_profile_kind(const std::string& name);
std::string check_kind_name(CheckKind kind);
CheckKind parse_check_kind(const std::string& name);
/// Convex for MaxGradOverK1, concave otherwise.
bool profile_is_convex_target(ProfileKind kind) noexcept;

/// f on the interior levels t_1..t_{n_t-2} of a uniform grid, plus the
/// boundary values f0 = f(0) and f1 = f(1).
struct HeightProfile {
  ProfileKind kind = ProfileKind::MaxGradOverK1;
  std::vector<double> t;
  std::vector<double> f;
  double dt = 0.0;
  double f0 = 0.0;
  double f1 = 0.0;

  double max_abs() const noexcept;
};

struct CheckReport {
  CheckKind kind = CheckKind::Convex;
  double worst_value = 0.0;
  std::size_t location = 0;
  double tol_used = 0.0;
  bool pass = false;
  /// Least-squares slope; set by check_affine only.
  std::optional<double> fitted_slope;
};

/// Samples fn on n_t uniform levels of [0, 1].
HeightProfile sample_profile(ProfileKind kind, std::size_t n_t, const std::function<double(double)>& fn);

/// Extremum over theta of the kind's integrand, row by row. Requires a
/// solution with the outer body at t = 0. Gauss2d needs a planar p-Laplace
/// solution.
HeightProfile profile_from_solution(const SupportSolution& sol, ProfileKind kind);

/// min over interior k of (f_{k+1} + f_{k-1} - 2 f_k) / dt^2; pass iff >= -tol.
CheckReport check_convex(const HeightProfile& profile, double tol);
/// max second difference; pass iff <= tol.
CheckReport check_concave(const HeightProfile& profile, double tol);
/// max |residual| from the least-squares line; pass iff <= tol.
CheckReport check_affine(const HeightProfile& profile, double tol);
/// max violation of the chord bound between (0, f0) and (1, f1); the sign
/// follows the kind (f below the chord for convex targets, above otherwise).
CheckReport check_endpoint_bound(const HeightProfile& profile, double f0, double f1, double tol);

/// max(1e-9, c_disc (dt^2 + dtheta^4)) * max|f|.
double default_tolerance(const HeightProfile& profile, double dtheta, double c_disc = 10.0);

}  // namespace levelcurve
