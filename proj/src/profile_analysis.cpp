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

#include "levelcurve/profile_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levelcurve/errors.hpp"
#include "levelcurve/ring_solver.hpp"

namespace levelcurve {

std::string profile_kind_name(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::MaxGradOverK1: return "maxGradOverK1";
    case ProfileKind::MinLogK1: return "minLogK1";
    case ProfileKind::Gauss2d: return "gauss2d";
  }
  return "unknown";
}

ProfileKind parse_profile_kind(const std::string& name) {
  if (name == "maxGradOverK1") return ProfileKind::MaxGradOverK1;
  if (name == "minLogK1") return ProfileKind::MinLogK1;
  if (name == "gauss2d") return ProfileKind::Gauss2d;
  throw Error(ErrorCode::InvalidArgument, "unknown profile kind '" + name + "'");
}

std::string check_kind_name(CheckKind kind) {
  switch (kind) {
    case CheckKind::Convex: return "convex";
    case CheckKind::Concave: return "concave";
    case CheckKind::Affine: return "affine";
    case CheckKind::EndpointBound: return "endpointBound";
  }
  return "unknown";
}

CheckKind parse_check_kind(const std::string& name) {
  if (name == "convex") return CheckKind::Convex;
  if (name == "concave") return CheckKind::Concave;
  if (name == "affine") return CheckKind::Affine;
  if (name == "endpointBound") return CheckKind::EndpointBound;
  throw Error(ErrorCode::InvalidArgument, "unknown check kind '" + name + "'");
}

bool profile_is_convex_target(ProfileKind kind) noexcept { return kind == ProfileKind::MaxGradOverK1; }

double HeightProfile::max_abs() const noexcept {
  double m = std::max(std::abs(f0), std::abs(f1));
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

HeightProfile sample_profile(ProfileKind kind, std::size_t n_t, const std::function<double(double)>& fn) {
  if (n_t < 3) throw Error(ErrorCode::TooFewSamples, "need at least 3 levels");
  HeightProfile out;
  out.kind = kind;
  out.dt = 1.0 / static_cast<double>(n_t - 1);
  for (std::size_t k = 1; k + 1 < n_t; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n_t - 1);
    out.t.push_back(t);
    out.f.push_back(fn(t));
  }
  out.f0 = fn(0.0);
  out.f1 = fn(1.0);
  return out;
}

namespace {

double row_value(const SupportSolution& sol, ProfileKind kind, std::size_t k) {
  const double p = sol.equation.p;
  switch (kind) {
    case ProfileKind::MaxGradOverK1: {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < sol.n_theta; ++j) {
        best = std::max(best, -sol.b_max(j, k) / sol.h_t[sol.index(j, k)]);
      }
      return best;
    }
    case ProfileKind::MinLogK1: {
      double bmax = 0.0;
      for (std::size_t j = 0; j < sol.n_theta; ++j) bmax = std::max(bmax, sol.b_max(j, k));
      return -std::log(bmax);
    }
    case ProfileKind::Gauss2d: {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < sol.n_theta; ++j) {
        const std::size_t i = sol.index(j, k);
        const double grad = -1.0 / sol.h_t[i];
        best = std::min(best, std::pow(grad, 3.0 - 2.0 * p) / sol.b_meridian[i]);
      }
      return best;
    }
  }
  return 0.0;
}

void require_samples(const HeightProfile& profile) {
  if (profile.f.size() < 3 || profile.t.size() != profile.f.size()) {
    throw Error(ErrorCode::TooFewSamples, "profile needs at least 3 samples");
  }
}

CheckReport second_difference(const HeightProfile& profile, double tol, bool convex) {
  require_samples(profile);
  CheckReport rep;
  rep.kind = convex ? CheckKind::Convex : CheckKind::Concave;
  rep.tol_used = tol;
  const double idt2 = 1.0 / (profile.dt * profile.dt);
  double worst = convex ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k + 1 < profile.f.size(); ++k) {
    const double d2 = (profile.f[k + 1] + profile.f[k - 1] - 2.0 * profile.f[k]) * idt2;
    if (convex ? d2 < worst : d2 > worst) {
      worst = d2;
      rep.location = k;
    }
  }
  rep.worst_value = worst;
  rep.pass = convex ? worst >= -tol : worst <= tol;
  return rep;
}

}  // namespace

HeightProfile profile_from_solution(const SupportSolution& sol, ProfileKind kind) {
  if (sol.inner_at_zero) {
    throw Error(ErrorCode::InvalidArgument, "profiles need the outer body at t = 0");
  }
  if (kind == ProfileKind::Gauss2d &&
      (sol.axisymmetric() || sol.equation.kind != EquationKind::PLaplace)) {
    throw Error(ErrorCode::InvalidArgument, "gauss2d is defined for planar p-Laplace solutions only");
  }
  HeightProfile out;
  out.kind = kind;
  out.dt = 1.0 / static_cast<double>(sol.n_t - 1);
  for (std::size_t k = 1; k + 1 < sol.n_t; ++k) {
    out.t.push_back(sol.t(k));
    out.f.push_back(row_value(sol, kind, k));
  }
  out.f0 = row_value(sol, kind, 0);
  out.f1 = row_value(sol, kind, sol.n_t - 1);
  return out;
}

CheckReport check_convex(const HeightProfile& profile, double tol) { return second_difference(profile, tol, true); }

CheckReport check_concave(const HeightProfile& profile, double tol) {
  return second_difference(profile, tol, false);
}

CheckReport check_affine(const HeightProfile& profile, double tol) {
  require_samples(profile);
  const auto m = static_cast<double>(profile.f.size());
  double st = 0.0, sf = 0.0;
  for (std::size_t k = 0; k < profile.f.size(); ++k) {
    st += profile.t[k];
    sf += profile.f[k];
  }
  const double tm = st / m, fm = sf / m;
  double stt = 0.0, stf = 0.0;
  for (std::size_t k = 0; k < profile.f.size(); ++k) {
    stt += (profile.t[k] - tm) * (profile.t[k] - tm);
    stf += (profile.t[k] - tm) * (profile.f[k] - fm);
  }
  const double slope = stf / stt;
  CheckReport rep;
  rep.kind = CheckKind::Affine;
  rep.tol_used = tol;
  rep.fitted_slope = slope;
  double worst = 0.0;
  for (std::size_t k = 0; k < profile.f.size(); ++k) {
    const double r = std::abs(profile.f[k] - (fm + slope * (profile.t[k] - tm)));
    if (r > worst) {
      worst = r;
      rep.location = k;
    }
  }
  rep.worst_value = worst;
  rep.pass = worst <= tol;
  return rep;
}

CheckReport check_endpoint_bound(const HeightProfile& profile, double f0, double f1, double tol) {
  if (profile.f.empty()) throw Error(ErrorCode::TooFewSamples, "empty profile");
  const double sign = profile_is_convex_target(profile.kind) ? 1.0 : -1.0;
  CheckReport rep;
  rep.kind = CheckKind::EndpointBound;
  rep.tol_used = tol;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < profile.f.size(); ++k) {
    const double t = profile.t[k];
    const double v = sign * (profile.f[k] - ((1.0 - t) * f0 + t * f1));
    if (v > worst) {
      worst = v;
      rep.location = k;
    }
  }
  rep.worst_value = worst;
  rep.pass = worst <= tol;
  return rep;
}

double default_tolerance(const HeightProfile& profile, double dtheta, double c_disc) {
  const double d4 = dtheta * dtheta * dtheta * dtheta;
  return std::max(1e-9, c_disc * (profile.dt * profile.dt + d4)) * profile.max_abs();
}

}  // namespace levelcurve
