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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "jet_chain.hpp"
#include "levelcurve/double_double.hpp"
#include "levelcurve/errors.hpp"
#include "levelcurve/jet_verifier.hpp"

namespace levelcurve {

std::string step_kind_name(StepKind kind) {
  switch (kind) {
    case StepKind::Identity:
      return "identity";
    case StepKind::Inequality:
      return "inequality";
    case StepKind::Zero:
      return "zero";
    case StepKind::Exploratory:
      return "exploratory";
  }
  return "unknown";
}

bool ChainReport::pass() const noexcept {
  return std::all_of(steps.begin(), steps.end(), [](const ChainStep& s) { return s.pass.value_or(true); });
}

const ChainStep* ChainReport::find(const std::string& name) const noexcept {
  for (const auto& s : steps) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

namespace {

template <class R>
double measure(StepKind kind, const R& lhs, const R& rhs, const R& scale) {
  const double l = to_double(lhs), r = to_double(rhs);
  switch (kind) {
    case StepKind::Identity:
      return std::abs(to_double(lhs - rhs)) / std::max({std::abs(l), std::abs(r), 1.0});
    case StepKind::Inequality:
      return to_double(lhs - rhs);
    case StepKind::Zero:
      return std::abs(l) / std::max(1.0, std::abs(to_double(scale)));
    case StepKind::Exploratory:
      return l;
  }
  return 0.0;
}

bool passes(const ChainStep& s) {
  switch (s.kind) {
    case StepKind::Identity:
    case StepKind::Zero:
      return s.value <= s.tol;
    case StepKind::Inequality:
      return s.value >= -s.tol * std::max({1.0, std::abs(s.lhs), std::abs(s.rhs)});
    case StepKind::Exploratory:
      return true;
  }
  return false;
}

/// Failures whose size could be double rounding get a second opinion.
bool in_gray_zone(const ChainStep& s) {
  switch (s.kind) {
    case StepKind::Identity:
    case StepKind::Zero:
      return s.value > s.tol && s.value <= kGrayZoneTop;
    case StepKind::Inequality:
      return !passes(s) && -s.value <= kGrayZoneTop * std::max({1.0, std::abs(s.lhs), std::abs(s.rhs)});
    case StepKind::Exploratory:
      return false;
  }
  return false;
}

template <class R>
ChainStep make_step(const detail::ChainEntry<R>& e) {
  ChainStep s;
  s.name = e.name;
  s.kind = e.kind;
  s.lhs = to_double(e.lhs);
  s.rhs = to_double(e.rhs);
  s.tol = e.tol;
  s.value = measure(e.kind, e.lhs, e.rhs, e.scale);
  if (e.kind != StepKind::Exploratory) s.pass = passes(s);
  return s;
}

void append(const Jet& jet, bool identities, std::vector<ChainStep>& out) {
  const auto entries = detail::evaluate_chain<double>(jet);
  std::optional<std::vector<detail::ChainEntry<DoubleDouble>>> extended;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if ((entries[i].kind == StepKind::Identity) != identities) continue;
    ChainStep s = make_step(entries[i]);
    if (in_gray_zone(s)) {
      if (!extended) extended = detail::evaluate_chain<DoubleDouble>(jet);
      // Both evaluations produce the same entry sequence.
      s = make_step((*extended)[i]);
      s.extended = true;
    }
    out.push_back(std::move(s));
  }
}

}  // namespace

ChainReport check_chain(const Jet& jet) {
  ChainReport report;
  report.mode = jet.mode;
  report.n = jet.n;
  report.p = jet.p;
  report.alpha = jet.alpha;
  report.beta = jet.beta;
  report.kappa = jet.kappa;
  append(jet, true, report.steps);
  append(enforce_first_order_condition(jet), false, report.steps);
  return report;
}

std::string chain_report_json(const ChainReport& report, std::size_t index) {
  nlohmann::ordered_json j;
  j["index"] = index;
  j["seed"] = report.seed;
  j["mode"] = jet_mode_name(report.mode);
  j["n"] = report.n;
  j["p"] = report.p;
  j["alpha"] = report.alpha;
  j["beta"] = report.beta;
  j["kappa"] = report.kappa;
  j["pass"] = report.pass();
  auto steps = nlohmann::ordered_json::array();
  for (const auto& s : report.steps) {
    nlohmann::ordered_json e;
    e["name"] = s.name;
    e["kind"] = step_kind_name(s.kind);
    e["lhs"] = s.lhs;
    e["rhs"] = s.rhs;
    e["value"] = s.value;
    e["tol"] = s.tol;
    e["pass"] = s.pass ? nlohmann::ordered_json(*s.pass) : nlohmann::ordered_json(nullptr);
    e["extended"] = s.extended;
    steps.push_back(std::move(e));
  }
  j["steps"] = std::move(steps);
  return j.dump();
}

std::uint64_t jet_seed(std::uint64_t base, std::size_t index) noexcept {
  // splitmix64 finalizer
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

unsigned jet_thread_count(unsigned requested) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LEVELCURVE_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

std::vector<ChainReport> run_jet_batch(const JetBatchConfig& config) {
  std::vector<ChainReport> reports(config.count);
  // Validate once up front so workers never throw.
  (void)sample_jet(config.options, config.seed);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(jet_thread_count(config.threads), std::max<std::size_t>(config.count, 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < config.count; i = next++) {
      const std::uint64_t seed = jet_seed(config.seed, i);
      reports[i] = check_chain(sample_jet(config.options, seed));
      reports[i].seed = seed;
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return reports;
}

std::vector<StepSummary> summarize(const std::vector<ChainReport>& reports) {
  std::vector<StepSummary> out;
  for (std::size_t r = 0; r < reports.size(); ++r) {
    for (const auto& s : reports[r].steps) {
      auto it = std::find_if(out.begin(), out.end(), [&](const StepSummary& x) { return x.name == s.name; });
      const bool lower_is_worse = s.kind == StepKind::Inequality || s.kind == StepKind::Exploratory;
      if (it == out.end()) {
        out.push_back({s.name, s.kind, s.value, r, 0, 0, 0});
        it = out.end() - 1;
      } else if (lower_is_worse ? s.value < it->worst : s.value > it->worst) {
        it->worst = s.value;
        it->worst_index = r;
      }
      ++it->count;
      if (s.pass && !*s.pass) ++it->failures;
      if (s.extended) ++it->extended;
    }
  }
  return out;
}

}  // namespace levelcurve
