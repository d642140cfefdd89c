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

#include "levelcurve/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <variant>

#include <json.hpp>

#include "levelcurve/analytic.hpp"
#include "levelcurve/io.hpp"
#include "levelcurve/support_geometry.hpp"

namespace levelcurve {

using Json = nlohmann::json;
using OJson = nlohmann::ordered_json;

std::string command_name(Command c) {
  switch (c) {
    case Command::Solve:
      return "solve";
    case Command::Profile:
      return "profile";
    case Command::Check:
      return "check";
    case Command::Jets:
      return "jets";
    case Command::Oracle:
      return "oracle";
  }
  return "unknown";
}

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); }

void only_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) bad(where + " must be an object");
  for (const auto& item : obj.items()) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return item.key() == k; });
    if (!ok) bad("unknown key '" + item.key() + "' in " + where);
  }
}

double number(const Json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) bad(where + " is missing '" + key + "'");
  const Json& v = obj.at(key);
  if (!v.is_number()) bad(where + "." + key + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad(where + "." + key + " must be finite");
  return x;
}

double number_or(const Json& obj, const char* key, const std::string& where, double fallback) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

double positive(const Json& obj, const char* key, const std::string& where) {
  const double x = number(obj, key, where);
  if (!(x > 0.0)) bad(where + "." + key + " must be positive");
  return x;
}

std::size_t count_or(const Json& obj, const char* key, const std::string& where, std::size_t fallback) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() <= 0) bad(where + "." + key + " must be a positive integer");
  return v.get<std::size_t>();
}

std::string string_of(const Json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) bad(where + " is missing '" + key + "'");
  if (!obj.at(key).is_string()) bad(where + "." + key + " must be a string");
  return obj.at(key).get<std::string>();
}

template <class F>
auto rethrow_as_config(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidConfig, where + ": " + e.what());
  }
}

ShapeSpec parse_shape(const Json& j, const std::string& where, const std::filesystem::path& base_dir) {
  if (!j.is_object()) bad(where + " must be an object");
  ShapeSpec s;
  s.shape = string_of(j, "shape", where);
  if (s.shape == "circle") {
    only_keys(j, where, {"shape", "r"});
    s.r = positive(j, "r", where);
  } else if (s.shape == "ellipse") {
    only_keys(j, where, {"shape", "a", "b"});
    s.a = positive(j, "a", where);
    s.b = positive(j, "b", where);
  } else if (s.shape == "offset-circle") {
    only_keys(j, where, {"shape", "r", "cx", "cy"});
    s.r = positive(j, "r", where);
    s.cx = number(j, "cx", where);
    s.cy = number(j, "cy", where);
  } else if (s.shape == "spheroid") {
    only_keys(j, where, {"shape", "a", "c"});
    s.a = positive(j, "a", where);
    s.c = positive(j, "c", where);
  } else if (s.shape == "samples") {
    only_keys(j, where, {"shape", "path"});
    s.path = string_of(j, "path", where);
    if (s.path.is_relative() && !base_dir.empty()) s.path = base_dir / s.path;
  } else {
    bad(where + ".shape '" + s.shape + "' is not one of circle, ellipse, offset-circle, spheroid, samples");
  }
  return s;
}

Command parse_command(const std::string& s) {
  for (Command c : {Command::Solve, Command::Profile, Command::Check, Command::Jets, Command::Oracle}) {
    if (command_name(c) == s) return c;
  }
  bad("command '" + s + "' is not one of solve, profile, check, jets, oracle");
}

void parse_problem(const Json& j, RunConfig& cfg, const std::filesystem::path& base_dir) {
  only_keys(j, "problem", {"equation", "p", "outer", "inner", "grid", "newton"});
  const std::string eq = string_of(j, "equation", "problem");
  if (eq == "pLaplace") {
    const double p = number(j, "p", "problem");
    cfg.equation = rethrow_as_config("problem.p", [&] { return EquationSpec::p_laplace(p); });
  } else if (eq == "minimalSurface") {
    cfg.equation = EquationSpec::minimal_surface();
  } else if (eq == "harmonicAxisym3D") {
    cfg.equation = EquationSpec::harmonic_axisym_3d();
  } else {
    bad("problem.equation '" + eq + "' is not one of pLaplace, minimalSurface, harmonicAxisym3D");
  }
  if (eq != "pLaplace" && j.contains("p")) bad("problem.p only applies to the pLaplace equation");
  if (!j.contains("outer") || !j.contains("inner")) bad("problem needs both 'outer' and 'inner'");
  cfg.outer = parse_shape(j.at("outer"), "problem.outer", base_dir);
  cfg.inner = parse_shape(j.at("inner"), "problem.inner", base_dir);
  if (j.contains("grid")) {
    const Json& g = j.at("grid");
    only_keys(g, "problem.grid", {"n_theta", "n_t"});
    cfg.n_theta = count_or(g, "n_theta", "problem.grid", cfg.n_theta);
    cfg.n_t = count_or(g, "n_t", "problem.grid", cfg.n_t);
  }
  if (j.contains("newton")) {
    const Json& n = j.at("newton");
    only_keys(n, "problem.newton", {"tol", "max_iter", "damping", "convexity_guard"});
    cfg.newton.tol = number_or(n, "tol", "problem.newton", cfg.newton.tol);
    cfg.newton.max_iter = static_cast<int>(count_or(n, "max_iter", "problem.newton", static_cast<std::size_t>(cfg.newton.max_iter)));
    cfg.newton.damping = number_or(n, "damping", "problem.newton", cfg.newton.damping);
    if (n.contains("convexity_guard")) {
      if (!n.at("convexity_guard").is_boolean()) bad("problem.newton.convexity_guard must be a boolean");
      cfg.newton.convexity_guard = n.at("convexity_guard").get<bool>();
    }
    if (!(cfg.newton.tol > 0.0)) bad("problem.newton.tol must be positive");
    if (!(cfg.newton.damping > 0.0 && cfg.newton.damping < 1.0)) bad("problem.newton.damping must lie in (0, 1)");
  }
}

void parse_jets(const Json& j, RunConfig& cfg) {
  only_keys(j, "jets", {"mode", "n", "p", "alpha", "beta", "kappa", "count", "seed", "threads", "radial"});
  JetBatchConfig& b = cfg.jets;
  b.options.mode = rethrow_as_config("jets.mode", [&] { return parse_jet_mode(string_of(j, "mode", "jets")); });
  b.options.n = static_cast<int>(count_or(j, "n", "jets", 3));
  b.options.p = number_or(j, "p", "jets", 2.0);
  b.options.alpha = number_or(j, "alpha", "jets", 0.0);
  b.options.beta = number_or(j, "beta", "jets", 0.0);
  if (j.contains("kappa")) b.options.kappa = number(j, "kappa", "jets");
  if (j.contains("radial")) {
    if (!j.at("radial").is_boolean()) bad("jets.radial must be a boolean");
    b.options.radial = j.at("radial").get<bool>();
  }
  b.count = count_or(j, "count", "jets", 1000);
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) bad("jets.seed must be a non-negative integer");
    b.seed = j.at("seed").get<std::uint64_t>();
  }
  b.threads = static_cast<unsigned>(count_or(j, "threads", "jets", 0));
  if (b.options.mode == JetMode::Minimal) b.options.p = 2.0;
  // Surface option errors now rather than mid-run.
  rethrow_as_config("jets", [&] { return sample_jet(b.options, b.seed); });
}

bool planar(const RunConfig& cfg) { return cfg.equation.kind != EquationKind::HarmonicAxisym3D; }

bool gauss_ok(const RunConfig& cfg) { return cfg.equation.kind == EquationKind::PLaplace; }

}  // namespace

RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ConfigParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
  only_keys(j, "config", {"command", "problem", "source", "profiles", "checks", "tolerance", "oracle", "jets", "output_dir"});
  RunConfig cfg;
  cfg.command = parse_command(string_of(j, "command", "config"));
  if (cfg.command == Command::Jets) {
    if (!j.contains("jets")) bad("the jets command needs a 'jets' object");
    parse_jets(j.at("jets"), cfg);
  } else {
    if (!j.contains("problem")) bad("the " + command_name(cfg.command) + " command needs a 'problem' object");
    parse_problem(j.at("problem"), cfg, base_dir);
  }
  if (j.contains("source")) {
    const std::string s = string_of(j, "source", "config");
    if (s == "solver") {
      cfg.source = Source::Solver;
    } else if (s == "analytic") {
      cfg.source = Source::Analytic;
    } else {
      bad("source '" + s + "' is not one of solver, analytic");
    }
    if (cfg.source == Source::Analytic && cfg.command == Command::Oracle) {
      bad("the oracle command compares the solver against the closed form; source must be solver");
    }
  }
  if (j.contains("profiles")) {
    if (!j.at("profiles").is_array()) bad("profiles must be an array of names");
    for (const auto& p : j.at("profiles")) {
      if (!p.is_string()) bad("profiles must be an array of names");
      cfg.profiles.push_back(rethrow_as_config("profiles", [&] { return parse_profile_kind(p.get<std::string>()); }));
    }
  }
  if (j.contains("checks")) {
    if (!j.at("checks").is_array()) bad("checks must be an array");
    std::size_t i = 0;
    for (const auto& c : j.at("checks")) {
      const std::string where = "checks[" + std::to_string(i++) + "]";
      only_keys(c, where, {"profile", "check", "tol", "tol_rel"});
      CheckSpec s;
      s.profile = rethrow_as_config(where, [&] { return parse_profile_kind(string_of(c, "profile", where)); });
      s.check = rethrow_as_config(where, [&] { return parse_check_kind(string_of(c, "check", where)); });
      if (c.contains("tol")) s.tol = number(c, "tol", where);
      if (c.contains("tol_rel")) s.tol_rel = number(c, "tol_rel", where);
      if ((s.tol && *s.tol < 0.0) || (s.tol_rel && *s.tol_rel < 0.0)) bad(where + " tolerances must be non-negative");
      cfg.checks.push_back(s);
    }
  }
  if (cfg.command == Command::Check && cfg.checks.empty()) bad("the check command needs a non-empty 'checks' array");
  if (j.contains("tolerance")) {
    only_keys(j.at("tolerance"), "tolerance", {"c_disc"});
    cfg.c_disc = positive(j.at("tolerance"), "c_disc", "tolerance");
  }
  if (j.contains("oracle")) {
    only_keys(j.at("oracle"), "oracle", {"tol", "profile_tol"});
    cfg.oracle_tol = number_or(j.at("oracle"), "tol", "oracle", cfg.oracle_tol);
    cfg.oracle_profile_tol = number_or(j.at("oracle"), "profile_tol", "oracle", cfg.oracle_profile_tol);
  }
  if (j.contains("output_dir")) {
    cfg.output_dir = string_of(j, "output_dir", "config");
    if (cfg.output_dir.is_relative() && !base_dir.empty()) cfg.output_dir = base_dir / cfg.output_dir;
  }
  if (cfg.command != Command::Jets) {
    for (ProfileKind k : cfg.profiles) {
      if (k == ProfileKind::Gauss2d && !gauss_ok(cfg)) bad("gauss2d is only defined for planar pLaplace problems");
    }
    for (const auto& c : cfg.checks) {
      if (c.profile == ProfileKind::Gauss2d && !gauss_ok(cfg)) bad("gauss2d is only defined for planar pLaplace problems");
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(read_text_file(path), path.parent_path());
}

namespace {

std::vector<double> circle_samples(const ShapeSpec& s, std::size_t n) {
  std::vector<std::pair<double, double>> rows = read_support_samples(s.path);
  if (rows.size() < 16) throw Error(ErrorCode::TooFewSamples, s.path.string() + ": need at least 16 samples");
  const double step = 2.0 * std::numbers::pi / static_cast<double>(rows.size());
  std::vector<double> h;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (std::abs(rows[j].first - step * static_cast<double>(j)) > 1e-9) {
      bad(s.path.string() + ": theta must be the uniform grid 2 pi j / N starting at 0");
    }
    h.push_back(rows[j].second);
  }
  return rows.size() == n ? h : resample_periodic(h, n);
}

CircleSupport planar_body(const ShapeSpec& s, std::size_t n) {
  if (s.shape == "circle") return support_of_circle(s.r, n);
  if (s.shape == "ellipse") return support_of_ellipse(s.a, s.b, n);
  if (s.shape == "offset-circle") return support_of_offset_circle(s.r, s.cx, s.cy, n);
  if (s.shape == "samples") return CircleSupport(circle_samples(s, n));
  bad("shape '" + s.shape + "' is not available for planar problems");
}

MeridianSupport meridian_body(const ShapeSpec& s, std::size_t m) {
  if (s.shape == "circle") return support_of_sphere(s.r, m);
  if (s.shape == "spheroid") return support_of_spheroid(s.a, s.c, m);
  if (s.shape == "samples") {
    const auto rows = read_support_samples(s.path);
    if (rows.size() != m + 1) {
      bad(s.path.string() + ": axisymmetric samples need exactly n_theta + 1 rows on [0, pi]");
    }
    std::vector<double> h;
    const double step = std::numbers::pi / static_cast<double>(m);
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (std::abs(rows[j].first - step * static_cast<double>(j)) > 1e-9) {
        bad(s.path.string() + ": theta must be the uniform grid pi j / M");
      }
      h.push_back(rows[j].second);
    }
    return MeridianSupport(std::move(h));
  }
  bad("shape '" + s.shape + "' is not available for axisymmetric problems");
}

RingProblem build_problem(const RunConfig& cfg) {
  if (planar(cfg)) {
    return RingProblem::planar(cfg.equation, planar_body(cfg.outer, cfg.n_theta), planar_body(cfg.inner, cfg.n_theta),
                               cfg.n_t, cfg.newton);
  }
  return RingProblem::axisymmetric(cfg.equation, meridian_body(cfg.outer, cfg.n_theta),
                                   meridian_body(cfg.inner, cfg.n_theta), cfg.n_t, cfg.newton);
}

bool is_round(const ShapeSpec& s) { return s.shape == "circle" || s.shape == "offset-circle"; }

/// A closed-form solution for the configured ring, translated by (cx, cy).
struct Oracle {
  std::string name;
  std::variant<RadialRing, EccentricHarmonic, RadialMinimal> handle;
  double cx = 0.0;
  double cy = 0.0;

  double profile(ProfileKind kind, double t) const {
    return std::visit([&](const auto& h) { return h.profile(kind, t); }, handle);
  }

  std::vector<double> samples(std::size_t nodes, std::size_t n_t, bool meridian) const {
    std::vector<double> h = std::visit([&](const auto& x) { return x.support_samples(nodes, n_t); }, handle);
    if (!meridian && (cx != 0.0 || cy != 0.0)) {
      for (std::size_t k = 0; k < n_t; ++k) {
        for (std::size_t j = 0; j < nodes; ++j) {
          const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(nodes);
          h[k * nodes + j] += cx * std::cos(th) + cy * std::sin(th);
        }
      }
    }
    return h;
  }
};

Oracle make_oracle(const RunConfig& cfg) {
  const ShapeSpec& o = cfg.outer;
  const ShapeSpec& i = cfg.inner;
  if (!is_round(o) || !is_round(i)) bad("closed forms need circular (or spherical) boundaries");
  const bool concentric = o.cx == i.cx && o.cy == i.cy;
  switch (cfg.equation.kind) {
    case EquationKind::PLaplace:
      if (concentric) return {"radialRing", RadialRing(2, cfg.equation.p, o.r, i.r), o.cx, o.cy};
      if (cfg.equation.p == 2.0) {
        return {"eccentricHarmonic", EccentricHarmonic(Circle{o.cx, o.cy, o.r}, Circle{i.cx, i.cy, i.r}), 0.0, 0.0};
      }
      bad("no closed form for an eccentric ring unless p = 2");
    case EquationKind::MinimalSurface:
      if (concentric) return {"radialMinimal", RadialMinimal(o.r, i.r), o.cx, o.cy};
      bad("no closed form for an eccentric minimal-surface ring");
    case EquationKind::HarmonicAxisym3D:
      if (o.shape == "circle" && i.shape == "circle") return {"radialRing", RadialRing(3, 2.0, o.r, i.r), 0.0, 0.0};
      bad("no closed form for a non-spherical axisymmetric ring");
  }
  bad("no closed form for this problem");
}

std::vector<ProfileKind> wanted_profiles(const RunConfig& cfg) {
  std::vector<ProfileKind> out = cfg.profiles;
  for (const auto& c : cfg.checks) {
    if (std::find(out.begin(), out.end(), c.profile) == out.end()) out.push_back(c.profile);
  }
  if (out.empty()) {
    out = {ProfileKind::MaxGradOverK1, ProfileKind::MinLogK1};
    if (gauss_ok(cfg)) out.push_back(ProfileKind::Gauss2d);
  }
  return out;
}

double theta_step(const RunConfig& cfg) {
  return (planar(cfg) ? 2.0 : 1.0) * std::numbers::pi / static_cast<double>(cfg.n_theta);
}

std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

OJson solve_json(const SupportSolution& sol) {
  OJson j;
  j["residual_norm"] = sol.residual_norm;
  j["iterations"] = sol.iterations;
  const std::size_t row = gradient_argmax_row(sol);
  j["gradient_argmax_row"] = row;
  j["gradient_argmax_on_boundary"] = row == 0 || row + 1 == sol.n_t;
  return j;
}

OJson check_json(const CheckSpec& spec, const HeightProfile& prof, const CheckReport& r) {
  OJson j;
  j["profile"] = profile_kind_name(spec.profile);
  j["check"] = check_kind_name(r.kind);
  j["worst_value"] = r.worst_value;
  j["location"] = r.location;
  j["t"] = r.location < prof.t.size() ? prof.t[r.location] : 0.0;
  j["tol_used"] = r.tol_used;
  j["pass"] = r.pass;
  j["fitted_slope"] = r.fitted_slope ? OJson(*r.fitted_slope) : OJson(nullptr);
  return j;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  RunResult res;
  OJson report;
  report["command"] = command_name(cfg.command);
  std::filesystem::create_directories(cfg.output_dir);
  auto emit = [&](const char* name, const std::string& content) {
    const auto path = cfg.output_dir / name;
    write_text_file(path, content);
    res.artifacts.push_back(path);
  };

  if (cfg.command == Command::Jets) {
    const auto reports = run_jet_batch(cfg.jets);
    std::string lines;
    for (std::size_t i = 0; i < reports.size(); ++i) lines += chain_report_json(reports[i], i) + '\n';
    emit("jets.jsonl", lines);
    const auto& o = cfg.jets.options;
    OJson j;
    j["mode"] = jet_mode_name(o.mode);
    j["n"] = o.n;
    j["p"] = o.p;
    j["alpha"] = o.alpha;
    j["beta"] = o.beta;
    j["kappa"] = reports.empty() ? 0.0 : reports.front().kappa;
    j["count"] = cfg.jets.count;
    j["seed"] = cfg.jets.seed;
    double worst_identity = 0.0;
    std::size_t failed_jets = 0;
    for (const auto& r : reports) failed_jets += r.pass() ? 0 : 1;
    auto steps = OJson::array();
    for (const auto& s : summarize(reports)) {
      OJson e;
      e["name"] = s.name;
      e["kind"] = step_kind_name(s.kind);
      e["worst"] = s.worst;
      e["worst_index"] = s.worst_index;
      e["failures"] = s.failures;
      e["extended"] = s.extended;
      e["count"] = s.count;
      steps.push_back(e);
      if (s.kind == StepKind::Identity) worst_identity = std::max(worst_identity, s.worst);
      res.summary.push_back("jets " + s.name + " [" + step_kind_name(s.kind) + "]: worst " + short_num(s.worst) +
                            (s.kind == StepKind::Exploratory ? std::string()
                                                             : ", failures " + std::to_string(s.failures)));
    }
    j["worst_identity_error"] = worst_identity;
    j["failed_jets"] = failed_jets;
    j["steps"] = steps;
    report["jets"] = j;
    res.pass = failed_jets == 0;
  } else {
    const RingProblem problem = build_problem(cfg);
    OJson pj;
    pj["equation"] = cfg.equation.name();
    if (cfg.equation.kind == EquationKind::PLaplace) pj["p"] = cfg.equation.p;
    pj["axisymmetric"] = problem.axisymmetric();
    pj["n_theta"] = cfg.n_theta;
    pj["n_t"] = cfg.n_t;
    pj["source"] = cfg.source == Source::Solver ? "solver" : "analytic";
    report["problem"] = pj;

    std::optional<Oracle> oracle;
    if (cfg.source == Source::Analytic || cfg.command == Command::Oracle) oracle = make_oracle(cfg);

    std::optional<SupportSolution> sol;
    if (cfg.source == Source::Solver) {
      sol = solve(problem);
    } else if (cfg.command == Command::Solve) {
      sol = solution_from_values(problem, oracle->samples(problem.grid().nodes(), cfg.n_t, problem.axisymmetric()));
    }
    if (sol) {
      report["solve"] = solve_json(*sol);
      res.summary.push_back("solve: residual " + short_num(sol->residual_norm) + " after " +
                            std::to_string(sol->iterations) + " iterations, max gradient on row " +
                            std::to_string(gradient_argmax_row(*sol)));
      if (cfg.command == Command::Solve || cfg.command == Command::Oracle) emit("solution.csv", solution_csv(*sol));
    }

    std::vector<HeightProfile> profiles;
    auto profile_of = [&](ProfileKind k) -> const HeightProfile& {
      for (const auto& p : profiles) {
        if (p.kind == k) return p;
      }
      profiles.push_back(cfg.source == Source::Solver
                             ? profile_from_solution(*sol, k)
                             : sample_profile(k, cfg.n_t, [&](double t) { return oracle->profile(k, t); }));
      return profiles.back();
    };
    if (cfg.command == Command::Profile || cfg.command == Command::Check ||
        (cfg.command == Command::Oracle && !cfg.profiles.empty())) {
      for (ProfileKind k : wanted_profiles(cfg)) profile_of(k);
    }

    if (!cfg.checks.empty() && cfg.command != Command::Solve) {
      auto checks = OJson::array();
      for (const auto& spec : cfg.checks) {
        const HeightProfile& prof = profile_of(spec.profile);
        const double tol = spec.tol              ? *spec.tol
                           : spec.tol_rel        ? *spec.tol_rel * prof.max_abs()
                                                 : default_tolerance(prof, theta_step(cfg), cfg.c_disc);
        CheckReport r;
        switch (spec.check) {
          case CheckKind::Convex:
            r = check_convex(prof, tol);
            break;
          case CheckKind::Concave:
            r = check_concave(prof, tol);
            break;
          case CheckKind::Affine:
            r = check_affine(prof, tol);
            break;
          case CheckKind::EndpointBound:
            r = check_endpoint_bound(prof, prof.f0, prof.f1, tol);
            break;
        }
        checks.push_back(check_json(spec, prof, r));
        res.pass = res.pass && r.pass;
        res.summary.push_back("check " + profile_kind_name(spec.profile) + " " + check_kind_name(r.kind) + ": " +
                              (r.pass ? "pass" : "FAIL") + " (worst " + short_num(r.worst_value) + ", tol " +
                              short_num(r.tol_used) + ")");
      }
      report["checks"] = checks;
    }

    if (cfg.command == Command::Oracle) {
      const auto exact = oracle->samples(sol->n_theta, sol->n_t, sol->axisymmetric());
      double err = 0.0;
      for (std::size_t i = 0; i < exact.size(); ++i) err = std::max(err, std::abs(sol->h[i] - exact[i]));
      OJson oj;
      oj["oracle"] = oracle->name;
      oj["sup_error"] = err;
      oj["tol"] = cfg.oracle_tol;
      const bool ok = err <= cfg.oracle_tol;
      oj["pass"] = ok;
      res.pass = res.pass && ok;
      res.summary.push_back("oracle " + oracle->name + ": sup error " + short_num(err) + (ok ? " pass" : " FAIL"));
      auto pjs = OJson::array();
      for (const auto& prof : profiles) {
        const auto exact_prof = sample_profile(prof.kind, cfg.n_t, [&](double t) { return oracle->profile(prof.kind, t); });
        double d = std::max(std::abs(prof.f0 - exact_prof.f0), std::abs(prof.f1 - exact_prof.f1));
        for (std::size_t k = 0; k < prof.f.size(); ++k) d = std::max(d, std::abs(prof.f[k] - exact_prof.f[k]));
        const bool pok = d <= cfg.oracle_profile_tol;
        OJson e;
        e["kind"] = profile_kind_name(prof.kind);
        e["max_diff"] = d;
        e["tol"] = cfg.oracle_profile_tol;
        e["pass"] = pok;
        pjs.push_back(e);
        res.pass = res.pass && pok;
        res.summary.push_back("oracle profile " + profile_kind_name(prof.kind) + ": max diff " + short_num(d) +
                              (pok ? " pass" : " FAIL"));
      }
      oj["profiles"] = pjs;
      report["oracle"] = oj;
    }

    if (!profiles.empty()) {
      auto pjs = OJson::array();
      for (const auto& p : profiles) {
        OJson e;
        e["kind"] = profile_kind_name(p.kind);
        e["f0"] = p.f0;
        e["f1"] = p.f1;
        e["max_abs"] = p.max_abs();
        pjs.push_back(e);
      }
      report["profiles"] = pjs;
      if (cfg.command != Command::Solve) emit("profile.csv", profile_csv(profiles));
    }
  }

  res.exit_code = res.pass ? 0 : 2;
  report["pass"] = res.pass;
  report["exit_code"] = res.exit_code;
  res.report_json = report.dump(2) + '\n';
  emit("report.json", res.report_json);
  return res;
}

std::string error_json(const std::exception& e) {
  OJson err;
  if (const auto* le = dynamic_cast<const Error*>(&e)) {
    err["code"] = std::string(error_code_name(le->code()));
    err["code_value"] = static_cast<int>(le->code());
  } else if (dynamic_cast<const std::filesystem::filesystem_error*>(&e) != nullptr) {
    err["code"] = std::string(error_code_name(ErrorCode::Io));
    err["code_value"] = static_cast<int>(ErrorCode::Io);
  } else {
    err["code"] = "Internal";
    err["code_value"] = 0;
  }
  err["message"] = e.what();
  if (const auto* pe = dynamic_cast<const ConfigParseError*>(&e)) err["position"] = pe->position();
  if (const auto* ne = dynamic_cast<const NewtonError*>(&e)) {
    err["last_residual"] = ne->last_residual();
    err["iterations"] = ne->iterations();
  }
  OJson out;
  out["error"] = err;
  return out.dump(-1, ' ', false, Json::error_handler_t::replace);
}

RunOutcome run_config_file(const std::filesystem::path& path, const RunOverrides& overrides) {
  RunOutcome out;
  try {
    RunConfig cfg = load_run_config(path);
    if (overrides.output_dir) cfg.output_dir = *overrides.output_dir;
    if (overrides.seed) cfg.jets.seed = *overrides.seed;
    RunResult r = run(cfg);
    out.exit_code = r.exit_code;
    out.summary = std::move(r.summary);
  } catch (const std::exception& e) {
    out.exit_code = 1;
    out.error_json = error_json(e);
  }
  return out;
}

}  // namespace levelcurve
