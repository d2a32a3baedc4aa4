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
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "repeatstat/error.hpp"
#include "repeatstat/special_functions.hpp"

using namespace repeatstat;

TEST_SUITE("special_functions") {

TEST_CASE("normal quantile agrees with bisection on erfc") {
  for (const double q : {1e-12, 1e-8, 1e-4, 0.001, 0.025, 0.1, 0.3, 0.5, 0.7, 0.9, 0.975, 0.999}) {
    CAPTURE(q);
    CHECK(normal_quantile(q) == doctest::Approx(oracle::normal_quantile(q)).epsilon(1e-10));
  }
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959964).epsilon(1e-5));
}

TEST_CASE("normal quantile inverts the CDF") {
  // Checked in the probability domain, where the far tails stay well conditioned.
  for (double q = 1e-6; q < 1.0; q += 0.0137) {
    CAPTURE(q);
    CHECK(std::abs(0.5 * std::erfc(-normal_quantile(q) / std::numbers::sqrt2) - q) <= 1e-9);
  }
  for (const double q : {1e-15, 1e-10, 1 - 1e-9, 1 - 1e-12}) {
    CAPTURE(q);
    CHECK(std::abs(0.5 * std::erfc(-normal_quantile(q) / std::numbers::sqrt2) - q) <= 1e-9);
  }
  for (double x = -8.0; x <= 3.0; x += 0.25) {
    CAPTURE(x);
    CHECK(normal_quantile(normal_cdf(x)) == doctest::Approx(x).epsilon(1e-9));
  }
}

TEST_CASE("critical value") {
  CHECK(critical_value(0.05) == doctest::Approx(oracle::z(0.05)).epsilon(1e-12));
  CHECK(critical_value(0.05) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(critical_value(0.10) == doctest::Approx(oracle::z(0.10)).epsilon(1e-12));
  CHECK(critical_value(0.01) == doctest::Approx(oracle::z(0.01)).epsilon(1e-12));
}

TEST_CASE("normal quantile rejects the closed endpoints") {
  CHECK_THROWS_AS(normal_quantile(0.0), DomainError);
  CHECK_THROWS_AS(normal_quantile(1.0), DomainError);
  CHECK_THROWS_AS(normal_quantile(std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST_CASE("log gamma") {
  double factorial = 1.0;
  for (int n = 1; n <= 25; ++n) {
    CAPTURE(n);
    CHECK(log_gamma(n) == doctest::Approx(std::log(factorial)).epsilon(1e-13).scale(1.0));
    factorial *= n;
  }
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
  for (double x = 0.01; x < 300.0; x *= 1.37) {
    CAPTURE(x);
    CHECK(log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("incomplete beta for integer shapes") {
  // Beta(2, 3) has the polynomial CDF 6x^2 - 8x^3 + 3x^4.
  for (double x = 0.0; x <= 1.0; x += 0.05) {
    CAPTURE(x);
    const double poly = 6 * x * x - 8 * x * x * x + 3 * x * x * x * x;
    CHECK(regularized_incomplete_beta(x, {2, 3}) == doctest::Approx(poly).epsilon(1e-13).scale(1.0));
  }
  for (int a = 1; a <= 15; a += 2) {
    for (int b = 1; b <= 40; b += 3) {
      for (const double x : {0.01, 0.1, 0.33, 0.5, 0.77, 0.95}) {
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(x);
        CHECK(regularized_incomplete_beta(x, {double(a), double(b)}) ==
              doctest::Approx(oracle::beta_cdf_integer(x, a, b)).epsilon(1e-11).scale(1.0));
      }
    }
  }
}

TEST_CASE("incomplete beta for half-integer shapes") {
  const BetaParams shapes[] = {{0.5, 0.5}, {1.5, 0.5}, {0.5, 3.5}, {10.5, 90.5}, {50.5, 50.5}, {90.5, 10.5}, {5.5, 2.5}};
  for (const auto s : shapes) {
    for (const double x : {0.02, 0.08, 0.15, 0.4, 0.5, 0.6, 0.85, 0.93}) {
      CAPTURE(s.a);
      CAPTURE(s.b);
      CAPTURE(x);
      CHECK(regularized_incomplete_beta(x, s) ==
            doctest::Approx(oracle::beta_cdf_half(x, s.a, s.b)).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("incomplete beta boundaries, symmetry and domain") {
  CHECK(regularized_incomplete_beta(0.0, {2.5, 7}) == 0.0);
  CHECK(regularized_incomplete_beta(1.0, {2.5, 7}) == 1.0);
  for (const double x : {0.1, 0.45, 0.9}) {
    CHECK(regularized_incomplete_beta(x, {3.5, 8}) ==
          doctest::Approx(1.0 - regularized_incomplete_beta(1.0 - x, {8, 3.5})).epsilon(1e-13).scale(1.0));
  }
  CHECK_THROWS_AS(regularized_incomplete_beta(-0.1, {1, 1}), DomainError);
  CHECK_THROWS_AS(regularized_incomplete_beta(0.5, {0, 1}), DomainError);
  CHECK_THROWS_AS(regularized_incomplete_beta(0.5, {1, -2}), DomainError);
}

TEST_CASE("beta quantile") {
  // Closed forms: Beta(1/2, 1/2) inverts to sin^2(pi q / 2), Beta(a, 1) to q^(1/a).
  for (const double q : {0.001, 0.05, 0.3, 0.5, 0.8, 0.95, 0.999}) {
    CAPTURE(q);
    const double s = std::sin(std::numbers::pi * q / 2.0);
    CHECK(beta_quantile(q, {0.5, 0.5}) == doctest::Approx(s * s).epsilon(1e-7).scale(1.0));
    CHECK(beta_quantile(q, {3.0, 1.0}) == doctest::Approx(std::cbrt(q)).epsilon(1e-7).scale(1.0));
  }
  const BetaParams shapes[] = {{0.5, 100.5}, {10.5, 90.5}, {500.5, 500.5}, {99.5, 1.5}, {1e4, 3e4}};
  for (const auto s : shapes) {
    for (const double q : {0.005, 0.025, 0.05, 0.5, 0.95, 0.975, 0.995}) {
      CAPTURE(s.a);
      CAPTURE(q);
      CHECK(regularized_incomplete_beta(beta_quantile(q, s), s) == doctest::Approx(q).epsilon(1e-8).scale(1.0));
    }
  }
  CHECK(beta_quantile(0.5, {1, 1}) == doctest::Approx(0.5).epsilon(1e-8));
  for (int k = 1; k <= 9; ++k) {
    const double x = k / 10.0;
    CHECK(beta_quantile(regularized_incomplete_beta(x, {2.5, 3.5}), {2.5, 3.5}) ==
          doctest::Approx(x).epsilon(1e-6).scale(1.0));
  }
  CHECK_THROWS_AS(beta_quantile(0.0, {2, 3}), DomainError);
  CHECK_THROWS_AS(beta_quantile(1.0, {2, 3}), DomainError);
  CHECK_THROWS_AS(beta_quantile(1.5, {2, 3}), DomainError);
}

TEST_CASE("binomial pmf") {
  for (const std::uint64_t n : {1u, 2u, 7u, 30u}) {
    for (std::uint64_t k = 0; k <= n; ++k) {
      for (const double p : {0.01, 0.3, 0.5, 0.92}) {
        CHECK(binomial_pmf(k, n, p) == doctest::Approx(oracle::binomial_pmf(k, n, p)).epsilon(1e-12));
      }
    }
  }
  double total = 0.0;
  for (std::uint64_t k = 0; k <= 1000; ++k) total += binomial_pmf(k, 1000, 0.37);
  CHECK(std::abs(total - 1.0) <= 1e-10);
  CHECK(binomial_pmf(0, 10, 0.0) == 1.0);
  CHECK(binomial_pmf(3, 10, 0.0) == 0.0);
  CHECK(binomial_pmf(10, 10, 1.0) == 1.0);
  CHECK(binomial_pmf(9, 10, 1.0) == 0.0);
  CHECK(binomial_pmf(2, 4, 0.5) == doctest::Approx(0.375).epsilon(1e-14));
  CHECK_THROWS_AS(binomial_pmf(11, 10, 0.5), DomainError);
}

}
