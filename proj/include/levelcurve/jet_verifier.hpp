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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace levelcurve {

enum class JetMode { PLaplace, Minimal };

std::string jet_mode_name(JetMode mode);
JetMode parse_jet_mode(const std::string& name);

/// Point values at a point where b_ij is diagonal with b_11 the largest
/// radius. Indices run over the n - 1 sphere directions, 0-based here, so
/// "direction 1" is index 0.
///
/// The equation reads h_tt = sum (c delta_ij + h_ti h_tj) b^{ij} with
/// c = kappa + w h_t^2: w = 1/(p - 1), kappa = 0 for the p-Laplace mode and
/// w = 1, kappa = 1 (by default) for the minimal mode.
struct Jet {
  int n = 2;
  double p = 2.0;
  JetMode mode = JetMode::PLaplace;
  double kappa = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  double h_t = -1.0;
  std::vector<double> h_ti;
  std::vector<double> b_diag;
  /// b_ij,k, fully symmetric, m^3 entries.
  std::vector<double> d3_b;
  /// b_ij,t, symmetric, m^2 entries.
  std::vector<double> bt;
  /// b_11,ij, symmetric, m^2 entries.
  std::vector<double> b11_ij;
  /// b_11,it, m entries.
  std::vector<double> b11_it;

  // Derived from the equation and its derivatives.
  double h_tt = 0.0;
  std::vector<double> h_tij;
  std::vector<double> h_tti;
  double h_ttt = 0.0;
  double h_tt11 = 0.0;
  double b11_tt = 0.0;
  double sigma1 = 0.0;

  int m() const noexcept { return n - 1; }
  double weight() const noexcept { return mode == JetMode::PLaplace ? 1.0 / (p - 1.0) : 1.0; }
  double d3(int i, int j, int k) const noexcept {
    return d3_b[static_cast<std::size_t>((i * m() + j) * m() + k)];
  }
  void set_d3(int i, int j, int k, double v);
  double bt_at(int i, int j) const noexcept { return bt[static_cast<std::size_t>(i * m() + j)]; }
  double b11_at(int i, int j) const noexcept { return b11_ij[static_cast<std::size_t>(i * m() + j)]; }
};

struct JetOptions {
  int n = 3;
  double p = 2.0;
  JetMode mode = JetMode::PLaplace;
  double alpha = 0.0;
  double beta = 0.0;
  /// h_ti = 0, equal radii, all derivative tensors zero.
  bool radial = false;
  /// Minimal mode only; the constant in c = kappa + h_t^2.
  std::optional<double> kappa;
};

/// Draws the free variables from a stream seeded with `seed` and derives the
/// rest. Bitwise reproducible across platforms.
Jet sample_jet(const JetOptions& options, std::uint64_t seed);

/// Recomputes the derived fields from the free ones.
void recompute_derived(Jet& jet);

/// Overrides b_11,j so that the spatial gradient of
/// phi = alpha log(-h_t) + log b_11 vanishes: b_11,j = -alpha h_t^{-1} h_tj b_11.
Jet enforce_first_order_condition(const Jet& jet);

/// L(phi) by the generic tensor chain rule.
double eval_L_phi_direct(const Jet& jet);
/// L(phi) from the regrouped closed form of the proof.
double eval_L_phi_regrouped(const Jet& jet);

enum class StepKind { Identity, Inequality, Zero, Exploratory };
std::string step_kind_name(StepKind kind);

struct ChainStep {
  std::string name;
  StepKind kind = StepKind::Identity;
  double lhs = 0.0;
  double rhs = 0.0;
  /// Relative error (identity), slack lhs - rhs (inequality), scaled
  /// magnitude (zero) or the raw value (exploratory).
  double value = 0.0;
  double tol = 0.0;
  /// Empty for exploratory entries.
  std::optional<bool> pass;
  /// Recomputed in double-double after landing in the gray zone.
  bool extended = false;
};

struct ChainReport {
  JetMode mode = JetMode::PLaplace;
  int n = 2;
  double p = 2.0;
  double alpha = 0.0;
  double beta = 0.0;
  double kappa = 0.0;
  std::uint64_t seed = 0;
  std::vector<ChainStep> steps;

  bool pass() const noexcept;
  const ChainStep* find(const std::string& name) const noexcept;
};

inline constexpr double kIdentityTol = 1e-9;
inline constexpr double kClosedFormTol = 1e-12;
inline constexpr double kZeroTol = 1e-12;
inline constexpr double kGrayZoneTop = 1e-6;

/// Identity steps on the jet as given; inequality and zero steps on
/// enforce_first_order_condition(jet).
ChainReport check_chain(const Jet& jet);

/// One JSON object on a single line.
std::string chain_report_json(const ChainReport& report, std::size_t index);

struct JetBatchConfig {
  JetOptions options;
  std::size_t count = 1000;
  std::uint64_t seed = 1;
  /// 0 means the hardware concurrency (capped by LEVELCURVE_THREADS).
  unsigned threads = 0;
};

/// Per-jet seed of jet i in a batch.
std::uint64_t jet_seed(std::uint64_t base, std::size_t index) noexcept;

/// Reports in index order regardless of the thread count.
std::vector<ChainReport> run_jet_batch(const JetBatchConfig& config);

/// Worker count: requested (or hardware) capped by LEVELCURVE_THREADS.
unsigned jet_thread_count(unsigned requested);

struct StepSummary {
  std::string name;
  StepKind kind = StepKind::Identity;
  /// Largest relative error / zero magnitude, or smallest slack.
  double worst = 0.0;
  std::size_t worst_index = 0;
  std::size_t failures = 0;
  std::size_t extended = 0;
  std::size_t count = 0;
};

std::vector<StepSummary> summarize(const std::vector<ChainReport>& reports);

}  // namespace levelcurve
