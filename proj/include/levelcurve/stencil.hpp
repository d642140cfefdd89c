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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace levelcurve {

enum class ThetaTopology {
  /// theta_j = 2 pi j / N, j = 0..N-1, periodic.
  Circle,
  /// theta_j = pi j / M, j = 0..M, even reflection across both poles.
  Meridian,
};

/// Five-point theta stencils on either parametrization.
///
/// Both stencils are the standard fourth-order central ones, rescaled so that
/// they differentiate cos(theta) and sin(theta) exactly. The rescaling factor
/// is 1 + O(dtheta^4), so the order of accuracy is unchanged, while h + h''
/// annihilates the first harmonic to round-off (support functions of
/// translated bodies differ by exactly such a harmonic).
class ThetaGrid {
 public:
  static constexpr int kHalfWidth = 2;

  ThetaGrid(ThetaTopology topology, std::size_t intervals);

  ThetaTopology topology() const noexcept { return topology_; }
  /// Number of stored nodes (N on the circle, M + 1 on the meridian).
  std::size_t nodes() const noexcept { return nodes_; }
  /// N on the circle, M on the meridian.
  std::size_t intervals() const noexcept { return intervals_; }
  double step() const noexcept { return step_; }
  double theta(std::size_t j) const noexcept { return step_ * static_cast<double>(j); }
  bool is_pole(std::size_t j) const noexcept {
    return topology_ == ThetaTopology::Meridian && (j == 0 || j == intervals_);
  }

  /// Stored node that offset o in [-2, 2] from node j refers to, after
  /// periodic wrap or pole reflection.
  std::size_t neighbor(std::size_t j, int offset) const noexcept;

  /// Weights for offsets -2..2.
  const std::array<double, 5>& first_weights() const noexcept { return w1_; }
  const std::array<double, 5>& second_weights() const noexcept { return w2_; }

  double first_at(std::span<const double> f, std::size_t j) const noexcept;
  double second_at(std::span<const double> f, std::size_t j) const noexcept;

  std::vector<double> first(std::span<const double> f) const;
  std::vector<double> second(std::span<const double> f) const;

 private:
  ThetaTopology topology_;
  std::size_t intervals_;
  std::size_t nodes_;
  double step_;
  std::array<double, 5> w1_{};
  std::array<double, 5> w2_{};
};

}  // namespace levelcurve
