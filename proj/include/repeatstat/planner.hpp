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
#include <functional>
#include <optional>
#include <vector>

#include "repeatstat/binomial_ci.hpp"

namespace repeatstat {

/// Repeats n guaranteeing an Agresti-Coull error margin of at most
/// epsilon at the worst case p = 0.5: ceil((z / 2 eps)^2 - z^2).
/// epsilon >= 0.5 is vacuous and returns 1.
std::uint64_t worst_case_n(double epsilon, double alpha = kDefaultAlpha);

/// Pseudo-trial count n + z^2 for the same guarantee: ceil((z / 2 eps)^2).
/// Quoting this value as "n" is the convention that yields 1068 / 9604
/// for eps = 0.03 / 0.01.
std::uint64_t worst_case_n_hat(double epsilon, double alpha = kDefaultAlpha);

/// The z = 2 shorthand: ceil(1 / eps^2 - 4), floored at 1.
std::uint64_t worst_case_n_simplified(double epsilon);

struct SampleSize {
  std::uint64_t n;
  bool degenerate;  // p_hat at a boundary; the bound carries no information
};

/// Repeats for error margin epsilon at a known p_hat:
/// max(1, ceil(z^2 p (1 - p) / eps^2) - ceil(z^2)).
SampleSize n_for_target(double p_hat, double epsilon, double alpha = kDefaultAlpha);

/// Piecewise-constant correction for the relative-error bound.
double scaling_function(double p_hat);

struct PlanConfig {
  double alpha = kDefaultAlpha;
  double target_rel_error = 0.1;  // e_T
  std::uint64_t n_init = 100;
  bool use_scaling = false;
  std::uint64_t n_cap = 1'000'000;

  /// Throws DomainError on an inconsistent configuration.
  void validate() const;
};

/// L(p) = s(p) ([z (1 + e_T) / e_T]^2 (1 - p) / p - z^2), rounded up and
/// floored at 1; s = 1 unless cfg.use_scaling. p must lie in (0, 1).
std::uint64_t relative_error_bound(double p_hat, const PlanConfig& cfg);

struct RootFindResult {
  std::uint64_t n;
  bool capped;
};

/// Max relative error of R_c when the proportion p_hat is observed over
/// n repeats and the interval is Agresti-Coull.
double r_c_relative_error_at(double p_hat, double n, double alpha, double c);

/// Smallest n with r_c_relative_error_at(p_hat, n) <= e_T, located by
/// doubling then bisection. The returned n satisfies the target and n - 1
/// does not. If no n <= n_cap satisfies it, returns n_cap with capped set.
RootFindResult exact_n_root_find(double p_hat, double e_T, double alpha, double c,
                                 std::uint64_t n_cap = 1'000'000);

/// Draws `batch` independent repeats and returns how many succeeded.
using SuccessOracle = std::function<std::uint64_t(std::uint64_t batch)>;

struct PlanRound {
  std::uint64_t round;
  std::uint64_t n_total;
  std::uint64_t n_success;
  double p_hat;                        // Agresti-Coull point used for the bound
  std::optional<std::uint64_t> bound;  // unset while no success has been seen
  bool stop;
};

struct PlanResult {
  std::uint64_t final_n;
  SuccessEstimate final_estimate;
  std::optional<std::uint64_t> bound_value;
  std::vector<PlanRound> trace;
  bool capped;
};

/// Adaptive repeat controller. Draws n_init repeats, then alternates:
/// estimate p (Agresti-Coull point), compute L(p); stop if n >= L,
/// otherwise draw L - n more. While no success has been seen the total is
/// doubled instead. Never exceeds cfg.n_cap. on_round, when set, sees
/// every trace entry as it is produced.
PlanResult adaptive_repeats(const SuccessOracle& oracle, const PlanConfig& cfg,
                            const std::function<void(const PlanRound&)>& on_round = {});

}  // namespace repeatstat
