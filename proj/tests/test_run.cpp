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

#include <doctest.h>

#include <filesystem>
#include <string>

#include "levelcurve/errors.hpp"
#include "levelcurve/io.hpp"
#include "levelcurve/run.hpp"

using namespace levelcurve;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("levelcurve_test_run_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

ErrorCode parse_code(const std::string& text) {
  try {
    (void)parse_run_config(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

const char* kConcentric = R"({
  "command": "check",
  "problem": {
    "equation": "pLaplace", "p": 2,
    "outer": {"shape": "circle", "r": 1.0},
    "inner": {"shape": "circle", "r": 0.5},
    "grid": {"n_theta": 64, "n_t": 33}
  },
  "checks": [{"profile": "maxGradOverK1", "check": "affine", "tol": 1e-10}]
})";

}  // namespace

TEST_CASE("format_double uses 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5e-300) == "-2.5e-300");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("config parsing applies defaults") {
  const RunConfig c = parse_run_config(kConcentric);
  CHECK(c.command == Command::Check);
  CHECK(c.n_theta == 64);
  CHECK(c.n_t == 33);
  CHECK(c.equation.kind == EquationKind::PLaplace);
  CHECK(c.checks.size() == 1);
  CHECK(c.checks[0].tol.value() == 1e-10);
  CHECK(c.source == Source::Solver);
}

TEST_CASE("malformed JSON reports a position") {
  try {
    (void)parse_run_config("{\"command\": \"solve\",, }");
    FAIL("expected a parse error");
  } catch (const ConfigParseError& e) {
    CHECK(e.position() == 21);
    const std::string j = error_json(e);
    CHECK(j.find("\"position\":21") != std::string::npos);
    CHECK(j.find("line 1") != std::string::npos);
  }
}

TEST_CASE("invalid configs") {
  CHECK(parse_code(R"({"command": "fly"})") == ErrorCode::InvalidConfig);
  CHECK(parse_code(R"({"command": "check", "problem": {"equation": "pLaplace", "p": 2,
      "outer": {"shape": "circle", "r": 1}, "inner": {"shape": "circle", "r": 0.5}}})") == ErrorCode::InvalidConfig);
  CHECK(parse_code(R"({"command": "solve", "problem": {"equation": "pLaplace", "p": 2,
      "outer": {"shape": "circle", "r": -1}, "inner": {"shape": "circle", "r": 0.5}}})") == ErrorCode::InvalidConfig);
  CHECK(parse_code(R"({"command": "solve", "bogus": 1})") == ErrorCode::InvalidConfig);
  CHECK(parse_code(R"({"command": "jets", "jets": {"mode": "pLaplace", "n": 3, "p": 0.5}})") == ErrorCode::InvalidConfig);
  CHECK(parse_code(R"({"command": "solve", "problem": {"equation": "minimalSurface",
      "outer": {"shape": "circle", "r": 1}, "inner": {"shape": "circle", "r": 0.5}},
      "profiles": ["gauss2d"]})") == ErrorCode::InvalidConfig);
}

TEST_CASE("concentric affine check passes on the analytic source") {
  RunConfig c = parse_run_config(kConcentric);
  c.source = Source::Analytic;
  c.output_dir = scratch("affine");
  const RunResult r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report_json.find("\"worst_value\"") != std::string::npos);
  CHECK(fs::exists(c.output_dir / "report.json"));
  CHECK(fs::exists(c.output_dir / "profile.csv"));
}

TEST_CASE("a failing check gives exit code 2") {
  RunConfig c = parse_run_config(R"({
    "command": "check",
    "problem": {"equation": "pLaplace", "p": 2,
      "outer": {"shape": "ellipse", "a": 1.3, "b": 1.0}, "inner": {"shape": "circle", "r": 0.4},
      "grid": {"n_theta": 48, "n_t": 17}},
    "checks": [{"profile": "minLogK1", "check": "convex", "tol": 0}]
  })");
  c.output_dir = scratch("fail");
  CHECK(run(c).exit_code == 2);
}

TEST_CASE("solution and profile CSV layout") {
  RunConfig c = parse_run_config(kConcentric);
  c.command = Command::Oracle;
  c.checks.clear();
  c.output_dir = scratch("oracle");
  const RunResult r = run(c);
  CHECK(r.exit_code == 0);
  const std::string csv = read_text_file(c.output_dir / "solution.csv");
  CHECK(csv.rfind("theta,t,h,h_t,b_meridian\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n';
  CHECK(lines == 1 + 64 * 33);
}

TEST_CASE("support samples from CSV") {
  const fs::path dir = scratch("samples");
  std::string csv = "theta,h\n";
  for (int j = 0; j < 32; ++j) csv += format_double(2.0 * 3.141592653589793 * j / 32.0) + ",1.25\n";
  write_text_file(dir / "outer.csv", csv);
  write_text_file(dir / "cfg.json", R"({
    "command": "solve",
    "problem": {"equation": "pLaplace", "p": 2,
      "outer": {"shape": "samples", "path": "outer.csv"}, "inner": {"shape": "circle", "r": 0.5},
      "grid": {"n_theta": 64, "n_t": 17}},
    "output_dir": "out"
  })");
  const RunOutcome o = run_config_file(dir / "cfg.json", {});
  CHECK(o.exit_code == 0);
  CHECK(o.error_json.empty());
  CHECK(fs::exists(dir / "out" / "solution.csv"));
}

TEST_CASE("errors become exit code 1 with error JSON") {
  const RunOutcome o = run_config_file("/nonexistent/levelcurve.json", {});
  CHECK(o.exit_code == 1);
  CHECK(o.error_json.find("\"code\":\"Io\"") != std::string::npos);
}
