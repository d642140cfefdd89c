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

// Command-line front end. Talks to the library only through the C API.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "levelcurve/levelcurve.h"

int main(int argc, char** argv) {
  CLI::App app{"Level-set curvature lab: ring solves, height profiles and jet checks"};
  std::string config;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  app.add_option("--config", config, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "output directory (overrides output_dir)");
  app.add_option("--seed", seed, "base seed for the jets command");
  app.add_flag("--quiet", quiet, "suppress the summary on stdout");
  app.set_version_flag("--version", std::string(lc_version()));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::uint64_t seed_value = seed.value_or(0);
  lc_run_result result;
  const lc_status st =
      lc_run_config(config.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(), seed ? &seed_value : nullptr, &result);
  if (st != LC_OK) {
    std::fprintf(stderr, "{\"error\":{\"code\":\"Internal\",\"code_value\":%d,\"message\":\"%s\"}}\n",
                 static_cast<int>(st), lc_last_error());
    return 1;
  }
  if (result.error_json != nullptr) std::fprintf(stderr, "%s\n", result.error_json);
  if (!quiet && result.summary != nullptr) std::fputs(result.summary, stdout);
  const int code = result.exit_code;
  lc_run_result_free(&result);
  return code;
}
