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
#include <vector>

#include "doctest.h"
#include "repeatstat/error.hpp"
#include "repeatstat/sim.hpp"

using namespace repeatstat;

TEST_SUITE("sim") {

TEST_CASE("bernoulli batches") {
  const RngSpec rng{1, 2};
  CHECK(bernoulli_batch(0.0, 1000, rng) == 0);
  CHECK(bernoulli_batch(1.0, 1000, rng) == 1000);
  CHECK(bernoulli_batch(0.3, 1000, rng) == bernoulli_batch(0.3, 1000, rng));
  const auto big = bernoulli_batch(0.3, 1'000'000, rng);
  CHECK(std::abs(big / 1e6 - 0.3) < 4.0 * std::sqrt(0.21 / 1e6));
}

TEST_CASE("rng streams") {
  const RngSpec root{42, 0};
  CHECK(root.child(0) != root.child(1));
  CHECK(root.child(3) == RngSpec{42, 0}.child(3));
  CHECK(RngSpec{1, 0}.engine()() != RngSpec{2, 0}.engine()());
  auto e = root.engine();
  for (int k = 0; k < 1000; ++k) {
    const auto v = e.below(7);
    REQUIRE(v < 7);
    const double u = e.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("comparison with one trial yields 0/1 fractions") {
  const auto row = compare_optimizers(0.5, 0.45, 100, 1, 0.99, 0.05, RngSpec{7, 0});
  CHECK((row.frac_correct_order == 0.0 || row.frac_correct_order == 1.0));
  CHECK((row.frac_no_overlap == 0.0 || row.frac_no_overlap == 1.0));
  CHECK(row.trials == 1);
}

TEST_CASE("comparison is independent of the worker count") {
  const RngSpec rng{3, 9};
  const auto a = compare_optimizers(0.75, 0.7, 300, 400, 0.99, 0.05, rng, 1);
  const auto b = compare_optimizers(0.75, 0.7, 300, 400, 0.99, 0.05, rng, 8);
  CHECK(a.frac_correct_order == b.frac_correct_order);
  CHECK(a.frac_no_overlap == b.frac_no_overlap);
}

TEST_CASE("comparison limits") {
  const auto far = compare_optimizers(0.9, 0.1, 1000, 200, 0.99, 0.05, RngSpec{1, 1});
  CHECK(far.frac_correct_order == 1.0);
  CHECK(far.frac_no_overlap == 1.0);
  CHECK_THROWS_AS(compare_optimizers(0.4, 0.5, 10, 10, 0.99, 0.05, RngSpec{}), DomainError);
  CHECK_THROWS_AS(compare_optimizers(0.5, 0.4, 0, 10, 0.99, 0.05, RngSpec{}), DomainError);
}

TEST_CASE("relative error experiment") {
  PlanConfig cfg;
  const RngSpec rng{5, 0};
  const auto a = adaptive_relerr_experiment(0.4, cfg, 0.99, 200, rng, 1);
  const auto b = adaptive_relerr_experiment(0.4, cfg, 0.99, 200, rng, 6);
  CHECK(a.rel_errors == b.rel_errors);
  CHECK(a.final_ns == b.final_ns);
  CHECK(a.rel_errors.size() == 200);
  CHECK(a.q25 <= a.median);
  CHECK(a.median <= a.q75);
  for (const auto n : a.final_ns) CHECK(n >= cfg.n_init);
  const double frac = a.fraction_within(0.1);
  CHECK(frac >= 0.0);
  CHECK(frac <= 1.0);
  CHECK(a.fraction_within(1e9) == 1.0);
}

TEST_CASE("sample quantile, type 7") {
  CHECK(sample_quantile({4, 1, 3, 2}, 0.25) == doctest::Approx(1.75));
  CHECK(sample_quantile({4, 1, 3, 2}, 0.5) == doctest::Approx(2.5));
  CHECK(sample_quantile({4, 1, 3, 2}, 0.0) == 1.0);
  CHECK(sample_quantile({4, 1, 3, 2}, 1.0) == 4.0);
  CHECK(sample_quantile({7}, 0.3) == 7.0);
  CHECK_THROWS_AS(sample_quantile({}, 0.5), DomainError);
}

TEST_CASE("chunked check on constant and alternating samples") {
  const std::vector<std::uint8_t> ones(1000, 1);
  const auto c = chunked_beta_check(ones, 100, 0.1);
  CHECK(c.pooled == 1.0);
  CHECK(c.empirical_lower == 1.0);
  CHECK(c.empirical_upper == 1.0);
  CHECK(c.few_chunks);
  CHECK_FALSE(chunked_beta_check(ones, 50, 0.1).few_chunks);
  std::vector<std::uint8_t> alternating(200);
  for (std::size_t k = 0; k < alternating.size(); ++k) alternating[k] = k % 2;
  const auto a = chunked_beta_check(alternating, 2, 0.1);
  for (const double e : a.chunk_estimates) CHECK(e == 0.5);
  CHECK_FALSE(a.few_chunks);
  CHECK_THROWS_AS(chunked_beta_check(alternating, 3, 0.1), DomainError);
  CHECK_THROWS_AS(chunked_beta_check(alternating, 0, 0.1), DomainError);
}

TEST_CASE("chunked empirical band matches the Beta band") {
  std::vector<std::uint8_t> sample(10'000);
  auto e = RngSpec{2024, 0}.engine();
  for (auto& s : sample) s = e.bernoulli(0.5) ? 1 : 0;
  const auto r = chunked_beta_check(sample, 100, 0.1);
  CHECK(r.chunk_estimates.size() == 100);
  CHECK(std::abs(r.beta_lower - 0.42) <= 0.015);
  CHECK(std::abs(r.beta_upper - 0.58) <= 0.015);
  CHECK(std::abs(r.empirical_lower - r.beta_lower) <= 0.02);
  CHECK(std::abs(r.empirical_upper - r.beta_upper) <= 0.02);
}

}
