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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "levelcurve/errors.hpp"
#include "levelcurve/jet_verifier.hpp"
#include "levelcurve/profile_analysis.hpp"
#include "levelcurve/ring_solver.hpp"

namespace levelcurve {

enum class Command { Solve, Profile, Check, Jets, Oracle };
std::string command_name(Command c);

/// One boundary body. Shapes: circle(r), ellipse(a, b), offset-circle(r, cx, cy),
/// spheroid(a, c) and samples(path) read from a theta,h CSV.
struct ShapeSpec {
  std::string shape;
  double r = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  std::filesystem::path path;
};

struct CheckSpec {
  ProfileKind profile = ProfileKind::MaxGradOverK1;
  CheckKind check = CheckKind::Convex;
  /// Absolute tolerance; wins over tol_rel.
  std::optional<double> tol;
  /// Tolerance relative to max |f|.
  std::optional<double> tol_rel;
};

enum class Source { Solver, Analytic };

struct RunConfig {
  Command command = Command::Solve;
  EquationSpec equation;
  ShapeSpec outer;
  ShapeSpec inner;
  /// N on the circle, M on the meridian.
  std::size_t n_theta = 128;
  std::size_t n_t = 65;
  NewtonOptions newton;
  Source source = Source::Solver;
  std::vector<ProfileKind> profiles;
  std::vector<CheckSpec> checks;
  double c_disc = 10.0;
  double oracle_tol = 1e-3;
  double oracle_profile_tol = 1e-3;
  JetBatchConfig jets;
  std::filesystem::path output_dir = ".";
};

/// Malformed JSON; carries the byte offset reported by the parser.
class ConfigParseError : public Error {
 public:
  ConfigParseError(const std::string& what, std::size_t position)
      : Error(ErrorCode::InvalidConfig, what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Relative sample paths resolve against base_dir.
RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

struct RunResult {
  int exit_code = 0;
  bool pass = true;
  std::string report_json;
  /// Human-readable lines, one per check or summary item.
  std::vector<std::string> summary;
  std::vector<std::filesystem::path> artifacts;
};

/// Runs the command and writes its artifacts under config.output_dir.
/// Exit code 0 when every check passes, 2 otherwise. Errors propagate.
RunResult run(const RunConfig& config);

struct RunOverrides {
  std::optional<std::filesystem::path> output_dir;
  std::optional<std::uint64_t> seed;
};

struct RunOutcome {
  int exit_code = 1;
  std::vector<std::string> summary;
  /// Set when exit_code is 1.
  std::string error_json;
};

/// Load, override, run; every failure becomes exit code 1 plus error JSON.
RunOutcome run_config_file(const std::filesystem::path& path, const RunOverrides& overrides);

/// {"error": {"code": ..., "message": ..., ...}} on one line.
std::string error_json(const std::exception& e);

}  // namespace levelcurve
