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

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "levelcurve/double_double.hpp"
#include "levelcurve/jet_verifier.hpp"

using namespace levelcurve;

namespace {

JetOptions options(JetMode mode, int n, double p, double alpha, double beta) {
  JetOptions o;
  o.mode = mode;
  o.n = n;
  o.p = p;
  o.alpha = alpha;
  o.beta = beta;
  return o;
}

// Every length scales by lambda; kappa carries length^2.
Jet scaled(const Jet& jet, double lambda) {
  Jet s = jet;
  s.h_t *= lambda;
  s.kappa *= lambda * lambda;
  for (auto* v : {&s.h_ti, &s.b_diag, &s.d3_b, &s.bt, &s.b11_ij, &s.b11_it}) {
    for (double& x : *v) x *= lambda;
  }
  recompute_derived(s);
  return s;
}

}  // namespace

TEST_CASE("double-double keeps bits a double drops") {
  const DoubleDouble one(1.0);
  const DoubleDouble tiny(std::ldexp(1.0, -70));
  CHECK(to_double((one + tiny) - one) == std::ldexp(1.0, -70));
  const DoubleDouble third = DoubleDouble(1.0) / DoubleDouble(3.0);
  const DoubleDouble back = third * DoubleDouble(3.0) - DoubleDouble(1.0);
  CHECK(std::abs(to_double(back)) < 1e-30);
}

TEST_CASE("sampler is deterministic and respects the ranges") {
  const auto o = options(JetMode::PLaplace, 5, 1.2, -1.0, 1.0);
  const Jet a = sample_jet(o, 42);
  const Jet b = sample_jet(o, 42);
  CHECK(a.h_t == b.h_t);
  CHECK(a.d3_b == b.d3_b);
  CHECK(a.h_t <= -0.2);
  for (double v : a.b_diag) {
    CHECK(v >= 0.2);
    CHECK(v <= a.b_diag[0]);
  }
  CHECK(sample_jet(o, 43).h_t != a.h_t);
}

TEST_CASE("first-order condition examples") {
  Jet j = sample_jet(options(JetMode::PLaplace, 3, 2.0, 0.0, 0.0), 1);
  const Jet z = enforce_first_order_condition(j);
  for (int k = 0; k < z.m(); ++k) CHECK(z.d3(0, 0, k) == 0.0);

  Jet e = sample_jet(options(JetMode::PLaplace, 2, 2.0, -1.0, 1.0), 2);
  e.h_t = -1.0;
  e.h_ti = {0.5};
  e.b_diag = {2.0};
  recompute_derived(e);
  const Jet c = enforce_first_order_condition(e);
  CHECK(c.d3(0, 0, 0) == -1.0);

  const Jet j2 = sample_jet(options(JetMode::Minimal, 4, 2.0, -0.7, 0.4), 3);
  const Jet once = enforce_first_order_condition(j2);
  const Jet twice = enforce_first_order_condition(once);
  CHECK(once.d3_b == twice.d3_b);
  // Symmetry of the third-derivative tensor survives the override.
  CHECK(once.d3(0, 1, 0) == once.d3(0, 0, 1));
  CHECK(once.d3(1, 0, 0) == once.d3(0, 0, 1));
}

TEST_CASE("two routes to L(phi) agree") {
  for (auto mode : {JetMode::PLaplace, JetMode::Minimal}) {
    for (int n : {2, 3, 5}) {
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Jet j = sample_jet(options(mode, n, 3.7, 0.3, 0.6), seed);
        const double a = eval_L_phi_direct(j), b = eval_L_phi_regrouped(j);
        CHECK(std::abs(a - b) <= 1e-10 * std::max({1.0, std::abs(a), std::abs(b)}));
      }
    }
  }
}

TEST_CASE("n = 2 final bound vanishes on critical jets") {
  for (double p : {1.2, 2.0, 3.7}) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const auto r = check_chain(sample_jet(options(JetMode::PLaplace, 2, p, -1.0, 1.0), seed));
      const ChainStep* s = r.find("final_bound_zero_2d");
      REQUIRE(s != nullptr);
      CHECK(s->pass.value());
      CHECK(std::abs(s->lhs) <= 1e-12 * std::max(1.0, std::abs(r.find("final_inequality")->lhs)));
    }
  }
}

TEST_CASE("n = 3, p = 2, alpha = beta = 0 bound is a sum of two squares") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Jet j = sample_jet(options(JetMode::PLaplace, 3, 2.0, 0.0, 0.0), seed);
    const auto r = check_chain(j);
    const ChainStep* s = r.find("final_nonnegative");
    REQUIRE(s != nullptr);
    CHECK(s->kind == StepKind::Inequality);
    const double x = j.h_ti[0] / j.b_diag[0], y = j.h_ti[1] / j.b_diag[1];
    CHECK(s->lhs == doctest::Approx(x * x + y * y).epsilon(1e-12));
  }
}

TEST_CASE("alpha = -1, beta = 1 closed form, checked independently") {
  for (double p : {1.2, 2.0, 3.7}) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      const Jet j = sample_jet(options(JetMode::PLaplace, 5, p, -1.0, 1.0), seed);
      const auto r = check_chain(j);
      const double w = 1.0 / (p - 1.0), b1 = 1.0 / j.b_diag[0];
      double expect = 0.0;
      for (int i = 1; i < j.m(); ++i) {
        const double bi = 1.0 / j.b_diag[static_cast<std::size_t>(i)];
        const double g = j.h_ti[static_cast<std::size_t>(i)];
        expect += 2.0 * w * j.h_t * j.h_t * bi * (bi - b1) + 2.0 * w * g * g * bi * (b1 + p * bi);
      }
      const ChainStep* s = r.find("final_closed_form");
      REQUIRE(s != nullptr);
      CHECK(s->rhs == doctest::Approx(expect).epsilon(1e-12));
      CHECK(s->pass.value());
      CHECK(expect >= 0.0);
    }
  }
}

TEST_CASE("critical-jet remainders vanish") {
  for (auto mode : {JetMode::PLaplace, JetMode::Minimal}) {
    const auto r = check_chain(sample_jet(options(mode, 4, 2.0, 0.8, 0.3), 11));
    CHECK(r.find("R2_vanishes")->pass.value());
    CHECK(r.find("R3_vanishes")->pass.value());
  }
}

TEST_CASE("identity errors are scale invariant") {
  for (auto mode : {JetMode::PLaplace, JetMode::Minimal}) {
    const Jet j = sample_jet(options(mode, 3, 1.5, -1.0, 1.0), 5);
    const auto base = check_chain(j);
    for (double lambda : {0.5, 3.0}) {
      const auto r = check_chain(scaled(j, lambda));
      REQUIRE(r.steps.size() == base.steps.size());
      for (std::size_t i = 0; i < r.steps.size(); ++i) {
        const auto& s = r.steps[i];
        const auto& b = base.steps[i];
        if (s.kind != StepKind::Identity) continue;
        CHECK(s.value < 1e-12);
        // Both sides pick up the same power of lambda.
        if (std::abs(b.lhs) > 1e-8 && std::abs(b.rhs) > 1e-8) {
          CHECK(s.lhs / b.lhs == doctest::Approx(s.rhs / b.rhs).epsilon(1e-10));
        }
      }
    }
  }
}

TEST_CASE("minimal chain at kappa = 0 matches the p = 2 chain") {
  for (int n : {2, 3, 5}) {
    for (auto [alpha, beta] : {std::pair{-1.0, 1.0}, std::pair{0.0, 0.0}, std::pair{0.5, 2.0}}) {
      JetOptions o = options(JetMode::Minimal, n, 2.0, alpha, beta);
      o.kappa = 0.0;
      const Jet m = sample_jet(o, 9);
      Jet p = m;
      p.mode = JetMode::PLaplace;
      p.kappa = 0.0;
      recompute_derived(p);
      const auto rm = check_chain(m);
      const auto rp = check_chain(p);
      std::size_t compared = 0;
      for (const auto& s : rm.steps) {
        const ChainStep* t = rp.find(s.name);
        if (t == nullptr) continue;
        ++compared;
        CHECK(s.lhs == doctest::Approx(t->lhs).epsilon(1e-12).scale(1.0));
        CHECK(s.rhs == doctest::Approx(t->rhs).epsilon(1e-12).scale(1.0));
      }
      CHECK(compared >= 20);
    }
  }
}

TEST_CASE("generic alpha, beta degenerate bound is exploratory") {
  const auto r = check_chain(sample_jet(options(JetMode::PLaplace, 4, 3.0, 0.5, 2.0), 1));
  const ChainStep* s = r.find("final_nonnegative");
  REQUIRE(s != nullptr);
  CHECK(s->kind == StepKind::Exploratory);
  CHECK_FALSE(s->pass.has_value());
}

TEST_CASE("radial jets are accepted") {
  JetOptions o = options(JetMode::PLaplace, 3, 2.0, -1.0, 1.0);
  o.radial = true;
  const auto r = check_chain(sample_jet(o, 4));
  CHECK(r.pass());
}

TEST_CASE("batch output does not depend on the thread count") {
  JetBatchConfig cfg;
  cfg.options = options(JetMode::Minimal, 3, 2.0, -1.0, 1.0);
  cfg.count = 64;
  cfg.seed = 77;
  cfg.threads = 1;
  const auto a = run_jet_batch(cfg);
  cfg.threads = 4;
  const auto b = run_jet_batch(cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(chain_report_json(a[i], i) == chain_report_json(b[i], i));
  CHECK(a[3].seed == jet_seed(77, 3));
}

TEST_CASE("thread cap from the environment") {
  ::setenv("LEVELCURVE_THREADS", "2", 1);
  CHECK(jet_thread_count(8) == 2);
  CHECK(jet_thread_count(1) == 1);
  ::setenv("LEVELCURVE_THREADS", "junk", 1);
  CHECK(jet_thread_count(8) == 8);
  ::unsetenv("LEVELCURVE_THREADS");
}

TEST_CASE("invalid jet options are rejected") {
  CHECK_THROWS(sample_jet(options(JetMode::PLaplace, 1, 2.0, 0.0, 0.0), 1));
  CHECK_THROWS(sample_jet(options(JetMode::PLaplace, 3, 1.0, 0.0, 0.0), 1));
  CHECK_THROWS(sample_jet(options(JetMode::PLaplace, 3, 2.0, 0.0, -1.0), 1));
}

TEST_CASE("summary keeps the worst entry per step") {
  JetBatchConfig cfg;
  cfg.options = options(JetMode::PLaplace, 3, 2.0, 0.0, 0.0);
  cfg.count = 20;
  const auto reports = run_jet_batch(cfg);
  const auto sum = summarize(reports);
  REQUIRE_FALSE(sum.empty());
  for (const auto& s : sum) {
    CHECK(s.count == reports.size());
    CHECK(s.failures == 0);
  }
}
