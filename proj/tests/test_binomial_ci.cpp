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
#include <limits>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "repeatstat/binomial_ci.hpp"
#include "repeatstat/error.hpp"

using namespace repeatstat;

namespace {

constexpr CiMethod kMethods[] = {CiMethod::Wald, CiMethod::Wilson, CiMethod::AgrestiCoull, CiMethod::Jeffreys};

}  // namespace

TEST_SUITE("binomial_ci") {

TEST_CASE("tally validation") {
  CHECK_THROWS_AS(TrialTally(0, 0), DomainError);
  CHECK_THROWS_AS(TrialTally(10, 11), DomainError);
  const TrialTally t(10, 3);
  CHECK(t.failures() == 7);
  CHECK(t.proportion() == doctest::Approx(0.3));
}

TEST_CASE("method names") {
  CHECK(parse_ci_method("wald") == CiMethod::Wald);
  CHECK(parse_ci_method("Wilson") == CiMethod::Wilson);
  CHECK(parse_ci_method("ac") == CiMethod::AgrestiCoull);
  CHECK(parse_ci_method("agresti-coull") == CiMethod::AgrestiCoull);
  CHECK(parse_ci_method("jeffreys") == CiMethod::Jeffreys);
  CHECK_FALSE(parse_ci_method("clopper").has_value());
  for (const auto m : kMethods) CHECK(parse_ci_method(to_string(m)) == m);
}

TEST_CASE("intervals match their defining formulas") {
  for (std::uint64_t n = 1; n <= 60; n += 7) {
    for (std::uint64_t k = 0; k <= n; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      const TrialTally t(n, k);
      const auto wald = confidence_interval(t, CiMethod::Wald);
      const auto wald_ref = oracle::wald(k, n, 0.05);
      CHECK(wald.lower == doctest::Approx(wald_ref.lower).epsilon(1e-12).scale(1.0));
      CHECK(wald.upper == doctest::Approx(wald_ref.upper).epsilon(1e-12).scale(1.0));

      const auto wilson = confidence_interval(t, CiMethod::Wilson);
      const auto wilson_ref = oracle::wilson(k, n, 0.05);
      CHECK(wilson.lower == doctest::Approx(wilson_ref.lower).epsilon(1e-10).scale(1.0));
      CHECK(wilson.upper == doctest::Approx(wilson_ref.upper).epsilon(1e-10).scale(1.0));

      const auto ac = confidence_interval(t, CiMethod::AgrestiCoull);
      const auto [ac_point, ac_ref] = oracle::agresti_coull(k, n, 0.05);
      CHECK(ac.point == doctest::Approx(ac_point).epsilon(1e-12));
      CHECK(ac.lower == doctest::Approx(ac_ref.lower).epsilon(1e-12).scale(1.0));
      CHECK(ac.upper == doctest::Approx(ac_ref.upper).epsilon(1e-12).scale(1.0));

      // Jeffreys bounds are Beta(k + 1/2, n - k + 1/2) quantiles.
      const auto j = confidence_interval(t, CiMethod::Jeffreys);
      const double a = static_cast<double>(k) + 0.5;
      const double b = static_cast<double>(n - k) + 0.5;
      if (k > 0) CHECK(oracle::beta_cdf_half(j.lower, a, b) == doctest::Approx(0.025).epsilon(1e-7).scale(1.0));
      if (k < n) CHECK(oracle::beta_cdf_half(j.upper, a, b) == doctest::Approx(0.975).epsilon(1e-7).scale(1.0));
    }
  }
}

TEST_CASE("reference values") {
  // From an independent statistics package.
  const TrialTally t(100, 10);
  const auto wilson = confidence_interval(t, CiMethod::Wilson);
  CHECK(wilson.lower == doctest::Approx(0.055229137060675094).epsilon(1e-9));
  CHECK(wilson.upper == doctest::Approx(0.17436566150491348).epsilon(1e-9));
  const auto jeffreys = confidence_interval(t, CiMethod::Jeffreys);
  CHECK(jeffreys.lower == doctest::Approx(0.05258467529066884).epsilon(1e-7));
  CHECK(jeffreys.upper == doctest::Approx(0.170123929652187).epsilon(1e-7));
  const auto ac = confidence_interval(TrialTally(100, 46));
  CHECK(ac.method == CiMethod::AgrestiCoull);
  CHECK(ac.point == doctest::Approx(0.46147973992827945).epsilon(1e-12));
  const auto half = confidence_interval(TrialTally(100, 50));
  CHECK(half.lower == doctest::Approx(0.4038315303659956).epsilon(1e-12));
  CHECK(half.upper == doctest::Approx(0.5961684696340044).epsilon(1e-12));
}

TEST_CASE("90% Jeffreys intervals at n = 100") {
  struct Row {
    std::uint64_t k;
    double lower;
    double upper;
  };
  for (const auto r : {Row{10, 0.06, 0.16}, Row{50, 0.42, 0.58}, Row{90, 0.84, 0.94}}) {
    const auto j = confidence_interval(TrialTally(100, r.k), CiMethod::Jeffreys, 0.10);
    CHECK(std::abs(j.lower - r.lower) <= 0.01);
    CHECK(std::abs(j.upper - r.upper) <= 0.01);
  }
}

TEST_CASE("containment and clipping for every tally up to n = 50") {
  for (const auto m : kMethods) {
    for (const double alpha : {0.01, 0.05, 0.2}) {
      for (std::uint64_t n = 1; n <= 50; ++n) {
        for (std::uint64_t k = 0; k <= n; ++k) {
          const auto est = confidence_interval(TrialTally(n, k), m, alpha);
          CAPTURE(to_string(m));
          CAPTURE(n);
          CAPTURE(k);
          REQUIRE(0.0 <= est.lower);
          REQUIRE(est.lower <= est.point);
          REQUIRE(est.point <= est.upper);
          REQUIRE(est.upper <= 1.0);
          REQUIRE(est.lower <= est.proportion());
          REQUIRE(est.proportion() <= est.upper);
        }
      }
    }
  }
}

TEST_CASE("boundary tallies") {
  const auto j0 = confidence_interval(TrialTally(20, 0), CiMethod::Jeffreys);
  CHECK(j0.lower == 0.0);
  CHECK(j0.upper > 0.0);
  const auto jn = confidence_interval(TrialTally(20, 20), CiMethod::Jeffreys);
  CHECK(jn.upper == 1.0);
  CHECK(jn.lower < 1.0);
  const auto w0 = confidence_interval(TrialTally(20, 0), CiMethod::Wald);
  CHECK(w0.degenerate);
  CHECK(w0.lower == 0.0);
  CHECK(w0.upper == 0.0);
  CHECK(confidence_interval(TrialTally(20, 20), CiMethod::Wald).degenerate);
  CHECK_FALSE(confidence_interval(TrialTally(20, 0), CiMethod::Wilson).degenerate);
  CHECK(relative_width(w0) == std::numeric_limits<double>::infinity());
}

TEST_CASE("width shrinks with n") {
  double prev = 1.0;
  for (std::uint64_t n = 10; n <= 100000; n *= 10) {
    const double w = interval_width(confidence_interval(TrialTally(n, n / 2)));
    CHECK(w < prev);
    prev = w;
  }
}

TEST_CASE("error margin") {
  const double z = oracle::z(0.05);
  CHECK(error_margin(0.5, 100) == doctest::Approx(z / std::sqrt(100 + z * z) * 0.5).epsilon(1e-12));
  const auto em = error_margin_interval(TrialTally(100, 46));
  CHECK(em.point == doctest::Approx(0.46));
  CHECK(em.upper - em.point == doctest::Approx(error_margin(0.46, 100)).epsilon(1e-12));
  CHECK(em.point - em.lower == doctest::Approx(error_margin(0.46, 100)).epsilon(1e-12));
  const auto edge = error_margin_interval(TrialTally(100, 99));
  CHECK(edge.upper == 1.0);
}

TEST_CASE("exact coverage") {
  // Reference values from an independent statistics package.
  CHECK(exact_coverage(CiMethod::AgrestiCoull, 0.5, 100) == doctest::Approx(0.9431120663590188).epsilon(1e-9));
  CHECK(exact_coverage(CiMethod::Wilson, 0.3, 50) == doctest::Approx(0.9566596115764137).epsilon(1e-9));
  CHECK(exact_coverage(CiMethod::Wald, 0.3, 50) == doctest::Approx(0.9346813241953538).epsilon(1e-9));
  CHECK(exact_coverage(CiMethod::Jeffreys, 0.3, 50) == doctest::Approx(0.9566596115764137).epsilon(1e-7));
  // Direct summation with the reference pmf.
  for (const auto m : kMethods) {
    double direct = 0.0;
    for (std::uint64_t k = 0; k <= 40; ++k) {
      const auto est = confidence_interval(TrialTally(40, k), m);
      if (est.lower <= 0.17 && 0.17 <= est.upper) direct += oracle::binomial_pmf(k, 40, 0.17);
    }
    CHECK(exact_coverage(m, 0.17, 40) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("exact coverage against Monte Carlo") {
  struct Case {
    CiMethod method;
    double p;
    std::uint64_t n;
  };
  const Case cases[] = {{CiMethod::Wald, 0.1, 30},
                        {CiMethod::Wilson, 0.3, 50},
                        {CiMethod::AgrestiCoull, 0.5, 100},
                        {CiMethod::Jeffreys, 0.85, 70}};
  std::mt19937_64 gen(20260415);
  constexpr int kDraws = 1'000'000;
  for (const auto& c : cases) {
    std::vector<char> covers(c.n + 1);
    for (std::uint64_t k = 0; k <= c.n; ++k) {
      const auto est = confidence_interval(TrialTally(c.n, k), c.method);
      covers[k] = est.lower <= c.p && c.p <= est.upper;
    }
    std::binomial_distribution<std::uint64_t> draw(c.n, c.p);
    int hits = 0;
    for (int d = 0; d < kDraws; ++d) hits += covers[draw(gen)];
    const double exact = exact_coverage(c.method, c.p, c.n);
    const double sigma = std::sqrt(exact * (1.0 - exact) / kDraws);
    CAPTURE(to_string(c.method));
    CHECK(std::abs(hits / double(kDraws) - exact) <= 3.0 * sigma);
  }
}

}
