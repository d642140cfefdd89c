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

#include "levelcurve/stencil.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "levelcurve/errors.hpp"

namespace levelcurve {

ThetaGrid::ThetaGrid(ThetaTopology topology, std::size_t intervals)
    : topology_(topology), intervals_(intervals) {
  if (intervals < 8) {
    throw Error(ErrorCode::InvalidGeometry,
                "theta grid needs at least 8 intervals, got " + std::to_string(intervals));
  }
  const double pi = std::numbers::pi;
  if (topology == ThetaTopology::Circle) {
    nodes_ = intervals;
    step_ = 2.0 * pi / static_cast<double>(intervals);
  } else {
    nodes_ = intervals + 1;
    step_ = pi / static_cast<double>(intervals);
  }
  const double d = step_;
  // Scale factors making the stencils exact on cos/sin.
  const double s1 = 6.0 * d / (8.0 * std::sin(d) - std::sin(2.0 * d));
  const double lambda = (30.0 - 32.0 * std::cos(d) + 2.0 * std::cos(2.0 * d)) / (12.0 * d * d);
  const double s2 = 1.0 / lambda;
  const double c1 = s1 / (12.0 * d);
  const double c2 = s2 / (12.0 * d * d);
  w1_ = {c1, -8.0 * c1, 0.0, 8.0 * c1, -c1};
  w2_ = {-c2, 16.0 * c2, -30.0 * c2, 16.0 * c2, -c2};
}

std::size_t ThetaGrid::neighbor(std::size_t j, int offset) const noexcept {
  const auto n = static_cast<long>(intervals_);
  long k = static_cast<long>(j) + offset;
  if (topology_ == ThetaTopology::Circle) {
    k %= n;
    if (k < 0) k += n;
    return static_cast<std::size_t>(k);
  }
  if (k < 0) k = -k;
  if (k > n) k = 2 * n - k;
  return static_cast<std::size_t>(k);
}

double ThetaGrid::first_at(std::span<const double> f, std::size_t j) const noexcept {
  double s = 0.0;
  for (int o = -kHalfWidth; o <= kHalfWidth; ++o) {
    s += w1_[static_cast<std::size_t>(o + kHalfWidth)] * f[neighbor(j, o)];
  }
  return s;
}

double ThetaGrid::second_at(std::span<const double> f, std::size_t j) const noexcept {
  double s = 0.0;
  for (int o = -kHalfWidth; o <= kHalfWidth; ++o) {
    s += w2_[static_cast<std::size_t>(o + kHalfWidth)] * f[neighbor(j, o)];
  }
  return s;
}

std::vector<double> ThetaGrid::first(std::span<const double> f) const {
  std::vector<double> out(nodes_);
  for (std::size_t j = 0; j < nodes_; ++j) out[j] = first_at(f, j);
  return out;
}

std::vector<double> ThetaGrid::second(std::span<const double> f) const {
  std::vector<double> out(nodes_);
  for (std::size_t j = 0; j < nodes_; ++j) out[j] = second_at(f, j);
  return out;
}

}  // namespace levelcurve
