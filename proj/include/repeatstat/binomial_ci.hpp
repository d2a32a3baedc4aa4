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
#include <optional>
#include <string_view>

namespace repeatstat {

enum class CiMethod { Wald, Wilson, AgrestiCoull, Jeffreys };

std::string_view to_string(CiMethod method);
std::optional<CiMethod> parse_ci_method(std::string_view name);

inline constexpr double kDefaultAlpha = 0.05;
inline constexpr CiMethod kDefaultMethod = CiMethod::AgrestiCoull;

/// n repeats with `successes` of them reaching the target.
class TrialTally {
 public:
  /// Throws DomainError unless 1 <= n and successes <= n.
  TrialTally(std::uint64_t n, std::uint64_t successes);

  std::uint64_t n() const noexcept { return n_; }
  std::uint64_t successes() const noexcept { return successes_; }
  std::uint64_t failures() const noexcept { return n_ - successes_; }

  /// Raw proportion n_s / n.
  double proportion() const noexcept { return static_cast<double>(successes_) / static_cast<double>(n_); }

  friend bool operator==(const TrialTally&, const TrialTally&) = default;

 private:
  std::uint64_t n_;
  std::uint64_t successes_;
};

/// A point estimate with a two-sided interval, all in [0, 1].
struct ProbabilityInterval {
  double point;
  double lower;
  double upper;
};

struct SuccessEstimate {
  double point;  // method-specific point estimate
  double lower;
  double upper;
  double alpha;
  CiMethod method;
  TrialTally tally;
  bool degenerate;  // zero-width interval (Wald at n_s in {0, n})

  double proportion() const noexcept { return tally.proportion(); }
  ProbabilityInterval interval() const noexcept { return {point, lower, upper}; }
};

/// n_s / n for Wald, Wilson and Jeffreys; (n_s + z^2/2) / (n + z^2) for
/// Agresti-Coull.
double point_estimate(const TrialTally& tally, CiMethod method, double alpha = kDefaultAlpha);

/// (1 - alpha) interval by the requested method, clipped to [0, 1].
SuccessEstimate confidence_interval(const TrialTally& tally, CiMethod method = kDefaultMethod,
                                    double alpha = kDefaultAlpha);

/// Agresti-Coull interval for a fractional success count. Used when a
/// proportion is held fixed while n varies (sample-size root finding).
ProbabilityInterval agresti_coull(double successes, double n, double alpha = kDefaultAlpha);

/// Symmetric error-margin interval p +- z / sqrt(n + z^2) * sqrt(p (1 - p))
/// centred on the raw proportion p = n_s / n. This is the Agresti-Coull
/// width placed around the raw estimate, the form used for the metric
/// error analysis. Clipped to [0, 1].
SuccessEstimate error_margin_interval(const TrialTally& tally, double alpha = kDefaultAlpha);

/// Half-width z / sqrt(n + z^2) * sqrt(p (1 - p)).
double error_margin(double p_hat, double n, double alpha = kDefaultAlpha);

double interval_width(const SuccessEstimate& est);

/// width / point; +inf when the point estimate is zero.
double relative_width(const SuccessEstimate& est);

/// P(p in CI) under Binomial(n, p), summed exactly over all outcomes.
double exact_coverage(CiMethod method, double p, std::uint64_t n, double alpha = kDefaultAlpha);

}  // namespace repeatstat
