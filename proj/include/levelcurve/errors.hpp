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

#include <stdexcept>
#include <string>
#include <string_view>

namespace levelcurve {

/// Failure categories shared by every module. The numeric values are the
/// ones surfaced through the C API.
enum class ErrorCode : int {
  InvalidArgument = 1,
  InvalidGeometry = 2,
  NonConvexBody = 3,
  InvalidProblem = 4,
  NonConvexIterate = 5,
  NewtonDiverged = 6,
  OutOfRange = 7,
  GeometryNotNested = 8,
  NoRadialSolution = 9,
  TooFewSamples = 10,
  InvalidConfig = 11,
  Io = 12,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Newton failure carrying the last residual sup-norm.
class NewtonError : public Error {
 public:
  NewtonError(ErrorCode code, const std::string& what, double last_residual,
              int iterations)
      : Error(code, what), last_residual_(last_residual), iterations_(iterations) {}

  double last_residual() const noexcept { return last_residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double last_residual_;
  int iterations_;
};

}  // namespace levelcurve
