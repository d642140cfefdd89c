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

#include "levelcurve/errors.hpp"

namespace levelcurve {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidGeometry: return "InvalidGeometry";
    case ErrorCode::NonConvexBody: return "NonConvexBody";
    case ErrorCode::InvalidProblem: return "InvalidProblem";
    case ErrorCode::NonConvexIterate: return "NonConvexIterate";
    case ErrorCode::NewtonDiverged: return "NewtonDiverged";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::GeometryNotNested: return "GeometryNotNested";
    case ErrorCode::NoRadialSolution: return "NoRadialSolution";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace levelcurve
