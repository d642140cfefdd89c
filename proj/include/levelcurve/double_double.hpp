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

#include <cmath>

namespace levelcurve {

/// Unevaluated sum hi + lo of two doubles (about 106 significant bits),
/// built on error-free transforms. Only the arithmetic the jet chains use.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double x) : hi(x), lo(0.0) {}  // NOLINT(google-explicit-constructor)
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  explicit operator double() const noexcept { return hi + lo; }
};

namespace dd_detail {

inline DoubleDouble two_sum(double a, double b) noexcept {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DoubleDouble quick_two_sum(double a, double b) noexcept {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DoubleDouble two_prod(double a, double b) noexcept {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) noexcept {
  DoubleDouble s = dd_detail::two_sum(a.hi, b.hi);
  const DoubleDouble t = dd_detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = dd_detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(const DoubleDouble& a) noexcept { return {-a.hi, -a.lo}; }

inline DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) noexcept { return a + (-b); }

inline DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) noexcept {
  DoubleDouble p = dd_detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) noexcept {
  const double q1 = a.hi / b.hi;
  DoubleDouble r = a - DoubleDouble(q1) * b;
  const double q2 = r.hi / b.hi;
  r = r - DoubleDouble(q2) * b;
  const double q3 = r.hi / b.hi;
  const DoubleDouble q = dd_detail::quick_two_sum(q1, q2);
  return q + DoubleDouble(q3);
}

inline DoubleDouble operator+(double a, const DoubleDouble& b) noexcept { return DoubleDouble(a) + b; }
inline DoubleDouble operator+(const DoubleDouble& a, double b) noexcept { return a + DoubleDouble(b); }
inline DoubleDouble operator-(double a, const DoubleDouble& b) noexcept { return DoubleDouble(a) - b; }
inline DoubleDouble operator-(const DoubleDouble& a, double b) noexcept { return a - DoubleDouble(b); }
inline DoubleDouble operator*(double a, const DoubleDouble& b) noexcept { return DoubleDouble(a) * b; }
inline DoubleDouble operator*(const DoubleDouble& a, double b) noexcept { return a * DoubleDouble(b); }
inline DoubleDouble operator/(double a, const DoubleDouble& b) noexcept { return DoubleDouble(a) / b; }
inline DoubleDouble operator/(const DoubleDouble& a, double b) noexcept { return a / DoubleDouble(b); }

inline DoubleDouble& operator+=(DoubleDouble& a, const DoubleDouble& b) noexcept { return a = a + b; }
inline DoubleDouble& operator-=(DoubleDouble& a, const DoubleDouble& b) noexcept { return a = a - b; }
inline DoubleDouble& operator*=(DoubleDouble& a, const DoubleDouble& b) noexcept { return a = a * b; }

inline double to_double(const DoubleDouble& x) noexcept { return x.hi + x.lo; }
inline double to_double(double x) noexcept { return x; }

}  // namespace levelcurve
