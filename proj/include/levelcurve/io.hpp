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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "levelcurve/profile_analysis.hpp"
#include "levelcurve/ring_solver.hpp"

namespace levelcurve {

/// 17 significant digits (enough to round-trip any double), '.' decimal
/// point regardless of locale.
std::string format_double(double x);

/// Header theta,t,h,h_t,b_meridian (and b_parallel when axisymmetric); rows
/// ordered by level, then angle.
std::string solution_csv(const SupportSolution& sol);

/// Header kind,t,f; each profile contributes its two boundary rows and all
/// interior levels.
std::string profile_csv(const std::vector<HeightProfile>& profiles);

/// Reads a support-sample CSV with a header naming the columns theta and h.
std::vector<std::pair<double, double>> read_support_samples(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
/// Writes bytes verbatim (no newline translation).
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace levelcurve
