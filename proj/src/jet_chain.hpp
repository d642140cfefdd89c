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

// Internal: templated evaluation of the L(phi) chains.

#pragma once

#include <vector>

#include "levelcurve/jet_verifier.hpp"

namespace levelcurve::detail {

template <class R>
struct DirectRoute {
  R htt;
  std::vector<R> htti;
  R httt;
  R htt11;
  R b11tt;
  R j1, j2, j3, j4;
  R l_phi;
  R l_b11;
  R i1, i2, i3, i4;
  R phi_t;
};

template <class R>
struct ChainEntry {
  const char* name;
  StepKind kind;
  R lhs;
  R rhs;
  /// Magnitude used by zero checks.
  R scale;
  double tol;
};

/// Tensor chain rule at a diagonal point; Real is double or DoubleDouble.
template <class R>
DirectRoute<R> direct_route(const Jet& jet);

/// Every chain entry applicable to the jet's mode and parameters, in a fixed
/// order that depends only on (mode, n, p, alpha, beta).
template <class R>
std::vector<ChainEntry<R>> evaluate_chain(const Jet& jet);

/// The regrouped closed form of L(phi).
template <class R>
R l_phi_regrouped(const Jet& jet);

}  // namespace levelcurve::detail
