// Copyright 2026 The repeatstat Authors
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


#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "repeatstat/error.hpp"
#include "repeatstat/planner.hpp"
#include "repeatstat/sim.hpp"

using namespace repeatstat;

TEST_SUITE("planner") {

TEST_CASE("worst-case n with the exact quantile") {
  CHECK(worst_case_n(0.03, 0.05) == 1064);
  const auto n = worst_case_n(0.01, 0.05);
  CHECK(n >= 9600);
  CHECK(n <= 9601);
  for (const double eps : {0.005, 0.02, 0.05, 0.1, 0.2}) {
    const double z = oracle::z(0.05);
    CHECK(worst_case_n(eps) == static_cast<std::uint64_t>(std::ceil(z * z / (4 * eps * eps) - z * z)));
  }
  CHECK(worst_case_n(0.5) == 1);
  CHECK(worst_case_n(0.9) == 1);
  CHECK_THROWS_AS(worst_case_n(0.0), DomainError);
  CHECK_THROWS_AS(worst_case_n(-0.1), DomainError);
}

TEST_CASE("the worst-case guarantee holds at n and fails at n - 1") {
  for (const double eps : {0.01, 0.03, 0.07}) {
    const auto n = worst_case_n(eps);
    CHECK(error_margin(0.5, static_cast<double>(n)) <= eps);
    CHECK(error_margin(0.5, static_cast<double>(n - 1)) > eps);
  }
}

TEST_CASE("quoted 1068 / 9604 drop the -z^2 term") {
  // Quoting the pseudo-trial count n + z^2 as n gives the larger values.
  CHECK(worst_case_n_hat(0.03) == 1068);
  CHECK(worst_case_n_hat(0.01) == 9604);
  const double z2 = std::pow(oracle::z(0.05), 2);
  for (const double eps : {0.03, 0.01}) {
    const auto with_term = worst_case_n(eps);
    const auto without_term = worst_case_n_hat(eps);
    CHECK(without_term > with_term);
    CHECK(static_cast<double>(without_term - with_term) <= std::ceil(z2));
    CHECK(static_cast<double>(without_term - with_term) >= std::floor(z2));
  }
}

TEST_CASE("simplified worst case is ceil(1/eps^2 - 4)") {
  CHECK(worst_case_n_simplified(0.1) == 96);
  CHECK(worst_case_n_simplified(0.05) == 396);
  CHECK(worst_case_n_simplified(0.01) == 9996);
  // eps = 1/m gives m^2 - 4 exactly.
  for (std::uint64_t m = 3; m <= 2000; ++m) {
    CAPTURE(m);
    REQUIRE(worst_case_n_simplified(1.0 / static_cast<double>(m)) == m * m - 4);
  }
  // eps = 2/(2m+1): 1/eps^2 - 4 = m^2 + m - 15/4, so the ceiling is m^2 + m - 3.
  for (std::uint64_t m = 2; m <= 500; ++m) {
    REQUIRE(worst_case_n_simplified(2.0 / static_cast<double>(2 * m + 1)) == m * m + m - 3);
  }
}

TEST_CASE("n for a target error margin") {
  CHECK(n_for_target(0.1, 0.03).n == 381);
  CHECK_FALSE(n_for_target(0.1, 0.03).degenerate);
  CHECK(n_for_target(0.0, 0.03).degenerate);
  CHECK(n_for_target(1.0, 0.03).degenerate);
  CHECK(n_for_target(0.5, 0.03).n <= worst_case_n_hat(0.03));
  CHECK(n_for_target(0.5, 0.4).n == 3);
  CHECK(n_for_target(0.5, 0.9).n == 1);
}

TEST_CASE("scaling function buckets") {
  CHECK(scaling_function(0.1) == 1.0);
  CHECK(scaling_function(0.5) == 1.0);
  CHECK(scaling_function(0.50001) == 1.5);
  CHECK(scaling_function(0.7) == 1.5);
  CHECK(scaling_function(0.75) == 2.0);
  CHECK(scaling_function(0.8) == 2.0);
  CHECK(scaling_function(0.85) == 2.5);
  CHECK(scaling_function(0.9) == 2.5);
  CHECK(scaling_function(0.95) == 7.0);
}

TEST_CASE("relative error bound L(p)") {
  PlanConfig cfg;
  const double z = oracle::z(0.05);
  auto expected = [&](double p, double s) {
    return static_cast<std::uint64_t>(std::ceil(s * (std::pow(z * 1.1 / 0.1, 2) * (1 - p) / p - z * z)));
  };
  for (const double p : {0.05, 0.2, 0.5, 0.65, 0.9}) CHECK(relative_error_bound(p, cfg) == expected(p, 1.0));
  CHECK(relative_error_bound(0.5, cfg) == 461);
  cfg.use_scaling = true;
  const auto scaled = relative_error_bound(0.9, cfg);
  CHECK(scaled >= 118);
  CHECK(scaled <= 122);
  for (const double p : {0.6, 0.75, 0.85, 0.95}) CHECK(relative_error_bound(p, cfg) == expected(p, scaling_function(p)));
  CHECK(relative_error_bound(0.999, cfg) == 1);
  CHECK_THROWS_AS(relative_error_bound(0.0, cfg), DomainError);
  CHECK_THROWS_AS(relative_error_bound(1.0, cfg), DomainError);
}

TEST_CASE("root finding matches a linear scan") {
  for (const double p : {0.05, 0.2, 0.5, 0.8}) {
    for (const double e : {0.3, 0.1}) {
      const auto r = exact_n_root_find(p, e, 0.05, 0.99);
      std::uint64_t scan = 1;
      while (r_c_relative_error_at(p, static_cast<double>(scan), 0.05, 0.99) > e) ++scan;
      CAPTURE(p);
      CAPTURE(e);
      CHECK_FALSE(r.capped);
      CHECK(r.n == scan);
    }
  }
}

TEST_CASE("root finding edge cases") {
  // A loose target is met by a single repeat.
  CHECK(exact_n_root_find(0.5, 20.0, 0.05, 0.99).n == 1);
  const auto capped = exact_n_root_find(0.5, 0.001, 0.05, 0.99, 5000);
  CHECK(capped.capped);
  CHECK(capped.n == 5000);
  CHECK_THROWS_AS(exact_n_root_find(0.0, 0.1, 0.05, 0.99), DomainError);
  CHECK_THROWS_AS(exact_n_root_find(0.5, 0.0, 0.05, 0.99), DomainError);
}

TEST_CASE("plan config validation") {
  PlanConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.n_init = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.target_rel_error = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.n_cap = 10;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.alpha = 1.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("adaptive controller stops at n_init when every repeat succeeds") {
  const auto plan = adaptive_repeats([](std::uint64_t b) { return b; }, PlanConfig{});
  CHECK(plan.final_n == 100);
  CHECK(plan.trace.size() == 1);
  CHECK(plan.trace[0].stop);
  CHECK_FALSE(plan.capped);
}

TEST_CASE("adaptive controller doubles while nothing succeeds and respects the cap") {
  PlanConfig cfg;
  cfg.n_cap = 1000;
  const auto plan = adaptive_repeats([](std::uint64_t) { return 0; }, cfg);
  CHECK(plan.capped);
  CHECK(plan.final_n == 1000);
  std::vector<std::uint64_t> ns;
  for (const auto& r : plan.trace) {
    ns.push_back(r.n_total);
    CHECK_FALSE(r.bound.has_value());
  }
  CHECK(ns == std::vector<std::uint64_t>{100, 200, 400, 800, 1000});
}

TEST_CASE("adaptive controller postconditions") {
  for (const bool scaled : {false, true}) {
    for (const double p : {0.05, 0.3, 0.5, 0.9}) {
      PlanConfig cfg;
      cfg.use_scaling = scaled;
      auto engine = RngSpec{99, static_cast<std::uint64_t>(p * 100)}.engine();
      std::vector<PlanRound> seen;
      const auto plan = adaptive_repeats([&](std::uint64_t b) { return bernoulli_batch(p, b, engine); }, cfg,
                                         [&](const PlanRound& r) { seen.push_back(r); });
      CAPTURE(p);
      REQUIRE(plan.bound_value.has_value());
      CHECK(plan.final_n >= *plan.bound_value);
      CHECK(plan.final_n == plan.final_estimate.tally.n());
      CHECK(seen.size() == plan.trace.size());
      for (std::size_t k = 1; k < plan.trace.size(); ++k) CHECK(plan.trace[k].n_total > plan.trace[k - 1].n_total);
      const auto last = plan.trace.back();
      CHECK(last.stop);
      CHECK(*last.bound == relative_error_bound(last.p_hat, cfg));
    }
  }
}

TEST_CASE("adaptive controller rejects an oracle that overcounts") {
  CHECK_THROWS_AS(adaptive_repeats([](std::uint64_t b) { return b + 1; }, PlanConfig{}), DomainError);
}

}
