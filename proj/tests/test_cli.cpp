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

// Drives the command-line binary as a subprocess.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "levelcurve_test_cli";

struct Result {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

Result cli(const std::string& args) {
  const std::string cmd = std::string(LEVELCURVE_CLI_PATH) + " " + args + " > " + (kRoot / "stdout").string() +
                          " 2> " + (kRoot / "stderr").string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(kRoot / "stdout"), slurp(kRoot / "stderr")};
}

void fresh() {
  fs::remove_all(kRoot);
  fs::create_directories(kRoot);
}

const char* kCheck = R"({
  "command": "check",
  "problem": {
    "equation": "pLaplace", "p": 2,
    "outer": {"shape": "circle", "r": 1.0},
    "inner": {"shape": "circle", "r": 0.5},
    "grid": {"n_theta": 64, "n_t": 33}
  },
  "source": "analytic",
  "checks": [{"profile": "maxGradOverK1", "check": "affine", "tol": 1e-10}]
})";

}  // namespace

TEST_CASE("malformed config exits 1 with a positioned error") {
  fresh();
  write(kRoot / "bad.json", "{\n  \"command\": \"check\"\n  \"problem\": {}\n}\n");
  const Result r = cli("--config " + (kRoot / "bad.json").string() + " --out " + (kRoot / "o").string());
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("\"error\"") != std::string::npos);
  CHECK(r.err.find("\"position\"") != std::string::npos);
  CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("check command exits 0 and writes a report") {
  fresh();
  write(kRoot / "check.json", kCheck);
  const Result r = cli("--config " + (kRoot / "check.json").string() + " --out " + (kRoot / "o").string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("affine: pass") != std::string::npos);
  const std::string report = slurp(kRoot / "o" / "report.json");
  CHECK(report.find("\"pass\": true") != std::string::npos);
  const Result q = cli("--quiet --config " + (kRoot / "check.json").string() + " --out " + (kRoot / "q").string());
  CHECK(q.exit_code == 0);
  CHECK(q.out.empty());
}

TEST_CASE("failing check exits 2") {
  fresh();
  write(kRoot / "fail.json", R"({
    "command": "check",
    "problem": {"equation": "pLaplace", "p": 2,
      "outer": {"shape": "ellipse", "a": 1.3, "b": 1.0}, "inner": {"shape": "circle", "r": 0.4},
      "grid": {"n_theta": 48, "n_t": 17}},
    "checks": [{"profile": "minLogK1", "check": "convex", "tol": 0}]
  })");
  const Result r = cli("--config " + (kRoot / "fail.json").string() + " --out " + (kRoot / "o").string());
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("jets command and seed override") {
  fresh();
  write(kRoot / "jets.json",
        R"({"command": "jets", "jets": {"mode": "pLaplace", "n": 3, "p": 2, "alpha": 0, "beta": 0, "count": 1000}})");
  const Result r = cli("--config " + (kRoot / "jets.json").string() + " --out " + (kRoot / "a").string());
  CHECK(r.exit_code == 0);
  const std::string report = slurp(kRoot / "a" / "report.json");
  const auto pos = report.find("\"worst_identity_error\": ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(report.substr(pos + 24)) < 1e-9);
  std::size_t lines = 0;
  for (char ch : slurp(kRoot / "a" / "jets.jsonl")) lines += ch == '\n';
  CHECK(lines == 1000);

  const Result s = cli("--seed 99 --config " + (kRoot / "jets.json").string() + " --out " + (kRoot / "b").string());
  CHECK(s.exit_code == 0);
  CHECK(slurp(kRoot / "a" / "jets.jsonl") != slurp(kRoot / "b" / "jets.jsonl"));
  CHECK(slurp(kRoot / "b" / "report.json").find("\"seed\": 99") != std::string::npos);
}

TEST_CASE("reruns are byte-identical") {
  fresh();
  write(kRoot / "oracle.json", R"({
    "command": "oracle",
    "problem": {"equation": "pLaplace", "p": 2,
      "outer": {"shape": "circle", "r": 1.0}, "inner": {"shape": "offset-circle", "r": 0.3, "cx": 0.2, "cy": 0.0},
      "grid": {"n_theta": 64, "n_t": 33}},
    "profiles": ["maxGradOverK1", "gauss2d"]
  })");
  write(kRoot / "jets.json",
        R"({"command": "jets", "jets": {"mode": "minimal", "n": 5, "alpha": -1, "beta": 1, "count": 200, "seed": 3}})");
  for (const char* name : {"oracle", "jets"}) {
    const std::string cfg = (kRoot / (std::string(name) + ".json")).string();
    REQUIRE(cli("--quiet --config " + cfg + " --out " + (kRoot / "r1").string()).exit_code == 0);
    REQUIRE(cli("--quiet --config " + cfg + " --out " + (kRoot / "r2").string()).exit_code == 0);
  }
  std::size_t compared = 0;
  for (const auto& e : fs::directory_iterator(kRoot / "r1")) {
    CHECK(slurp(e.path()) == slurp(kRoot / "r2" / e.path().filename()));
    ++compared;
  }
  CHECK(compared == 4);
}

TEST_CASE("missing required flag") {
  fresh();
  CHECK(cli("").exit_code == 1);
}
