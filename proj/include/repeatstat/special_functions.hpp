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

#pragma once

#include <cstdint>

namespace repeatstat {

/// Shape parameters of a Beta distribution. Both must be positive.
struct BetaParams {
  double a;
  double b;
};

/// Standard normal CDF.
double normal_cdf(double x);

/// Inverse of the standard normal CDF on (0, 1). Accurate to ~1e-15 in
/// the CDF domain. Throws DomainError outside (0, 1).
double normal_quantile(double q);

/// Two-sided critical value z with P(|Z| <= z) = 1 - alpha.
double critical_value(double alpha);

/// ln Gamma(x) for x > 0 (Lanczos, g = 7, 9 terms).
double log_gamma(double x);

/// Regularized incomplete beta I_x(a, b) for x in [0, 1].
double regularized_incomplete_beta(double x, BetaParams params);

/// Quantile of Beta(a, b): the x with I_x(a, b) = q. Bisection bracketed
/// around a normal approximation; throws NumericError if 200 halvings
/// do not reach |I_x - q| <= 1e-8.
double beta_quantile(double q, BetaParams params);

/// C(n, k) p^k (1 - p)^(n - k), evaluated in log space.
double binomial_pmf(std::uint64_t k, std::uint64_t n, double p);

}  // namespace repeatstat
