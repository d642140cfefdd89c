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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include "jet_chain.hpp"
#include "levelcurve/errors.hpp"
#include "levelcurve/jet_verifier.hpp"

namespace levelcurve {

std::string jet_mode_name(JetMode mode) {
  return mode == JetMode::PLaplace ? "pLaplace" : "minimal";
}

JetMode parse_jet_mode(const std::string& name) {
  if (name == "pLaplace") return JetMode::PLaplace;
  if (name == "minimal" || name == "minimalSurface") return JetMode::Minimal;
  throw Error(ErrorCode::InvalidArgument, "unknown jet mode '" + name + "'");
}

void Jet::set_d3(int i, int j, int k, double v) {
  const int idx[3] = {i, j, k};
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& pm : perms) {
    const int a = idx[pm[0]], b = idx[pm[1]], c = idx[pm[2]];
    d3_b[static_cast<std::size_t>((a * m() + b) * m() + c)] = v;
  }
}

namespace {

/// Uniform doubles from the top 53 bits, so the stream is the same on every
/// platform (std distributions are not).
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}
  double operator()(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

Jet sample_jet(const JetOptions& options, std::uint64_t seed) {
  if (options.n < 2) throw Error(ErrorCode::InvalidArgument, "jet dimension n must be at least 2");
  if (options.mode == JetMode::PLaplace && !(options.p > 1.0 && std::isfinite(options.p))) {
    throw Error(ErrorCode::InvalidArgument, "p must be a finite number greater than 1");
  }
  if (!std::isfinite(options.alpha) || !std::isfinite(options.beta)) {
    throw Error(ErrorCode::InvalidArgument, "alpha and beta must be finite");
  }
  if (options.beta <= -1.0) throw Error(ErrorCode::InvalidArgument, "beta must be greater than -1");
  if (options.kappa && options.mode == JetMode::PLaplace) {
    throw Error(ErrorCode::InvalidArgument, "kappa only applies to the minimal mode");
  }
  if (options.kappa && !(*options.kappa >= 0.0 && std::isfinite(*options.kappa))) {
    throw Error(ErrorCode::InvalidArgument, "kappa must be finite and non-negative");
  }

  Jet jet;
  jet.n = options.n;
  jet.p = options.mode == JetMode::PLaplace ? options.p : 2.0;
  jet.mode = options.mode;
  jet.kappa = options.mode == JetMode::Minimal ? options.kappa.value_or(1.0) : 0.0;
  jet.alpha = options.alpha;
  jet.beta = options.beta;
  const int m = jet.m();
  const auto mm = static_cast<std::size_t>(m);
  jet.h_ti.assign(mm, 0.0);
  jet.b_diag.assign(mm, 0.0);
  jet.d3_b.assign(mm * mm * mm, 0.0);
  jet.bt.assign(mm * mm, 0.0);
  jet.b11_ij.assign(mm * mm, 0.0);
  jet.b11_it.assign(mm, 0.0);

  Uniform draw(seed);
  jet.h_t = draw(-2.0, -0.5);
  if (options.radial) {
    const double r = draw(0.5, 2.0);
    std::fill(jet.b_diag.begin(), jet.b_diag.end(), r);
    recompute_derived(jet);
    return jet;
  }
  for (auto& g : jet.h_ti) g = draw(-1.0, 1.0);
  for (auto& b : jet.b_diag) b = draw(0.5, 2.0);
  // Direction 1 carries the largest radius.
  const auto top = std::max_element(jet.b_diag.begin(), jet.b_diag.end());
  std::iter_swap(jet.b_diag.begin(), top);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      for (int k = j; k < m; ++k) jet.set_d3(i, j, k, draw(-1.0, 1.0));
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const double v = draw(-1.0, 1.0);
      jet.bt[static_cast<std::size_t>(i * m + j)] = v;
      jet.bt[static_cast<std::size_t>(j * m + i)] = v;
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const double v = draw(-1.0, 1.0);
      jet.b11_ij[static_cast<std::size_t>(i * m + j)] = v;
      jet.b11_ij[static_cast<std::size_t>(j * m + i)] = v;
    }
  }
  for (auto& f : jet.b11_it) f = draw(-1.0, 1.0);
  recompute_derived(jet);
  return jet;
}

void recompute_derived(Jet& jet) {
  const int m = jet.m();
  const auto dr = detail::direct_route<double>(jet);
  jet.h_tt = dr.htt;
  jet.h_tti = dr.htti;
  jet.h_ttt = dr.httt;
  jet.h_tt11 = dr.htt11;
  jet.b11_tt = dr.b11tt;
  jet.h_tij.assign(static_cast<std::size_t>(m * m), 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      jet.h_tij[static_cast<std::size_t>(i * m + j)] = jet.bt_at(i, j) - (i == j ? jet.h_t : 0.0);
    }
  }
  jet.sigma1 = 0.0;
  for (double b : jet.b_diag) jet.sigma1 += 1.0 / b;
}

Jet enforce_first_order_condition(const Jet& jet) {
  Jet out = jet;
  const double b0 = jet.b_diag[0];
  for (int j = 0; j < jet.m(); ++j) {
    out.set_d3(0, 0, j, -jet.alpha / jet.h_t * jet.h_ti[static_cast<std::size_t>(j)] * b0);
  }
  recompute_derived(out);
  return out;
}

double eval_L_phi_direct(const Jet& jet) { return detail::direct_route<double>(jet).l_phi; }

double eval_L_phi_regrouped(const Jet& jet) { return detail::l_phi_regrouped<double>(jet); }

}  // namespace levelcurve
