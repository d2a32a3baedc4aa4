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

#include "repeatstat/planner.hpp"

#include <algorithm>
#include <cmath>

#include "repeatstat/error.hpp"
#include "repeatstat/metrics.hpp"
#include "repeatstat/special_functions.hpp"

namespace repeatstat {

namespace {

// Values within a few ulps above an integer are that integer: 1 / 0.1^2
// evaluates to 100.00000000000001.
std::uint64_t ceil_at_least_one(double value) {
  if (!(value > 1.0)) return 1;
  return static_cast<std::uint64_t>(std::ceil(value * (1.0 - 1e-12)));
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw DomainError("epsilon must be positive");
}

}  // namespace

std::uint64_t worst_case_n(double epsilon, double alpha) {
  check_epsilon(epsilon);
  if (epsilon >= 0.5) return 1;
  const double z = critical_value(alpha);
  return ceil_at_least_one(std::pow(z / (2.0 * epsilon), 2) - z * z);
}

std::uint64_t worst_case_n_hat(double epsilon, double alpha) {
  check_epsilon(epsilon);
  const double z = critical_value(alpha);
  return ceil_at_least_one(std::pow(z / (2.0 * epsilon), 2));
}

std::uint64_t worst_case_n_simplified(double epsilon) {
  check_epsilon(epsilon);
  if (epsilon >= 0.5) return 1;
  return ceil_at_least_one(1.0 / (epsilon * epsilon) - 4.0);
}

SampleSize n_for_target(double p_hat, double epsilon, double alpha) {
  check_epsilon(epsilon);
  if (!(p_hat >= 0.0 && p_hat <= 1.0)) throw DomainError("p_hat must lie in [0, 1]");
  if (p_hat == 0.0 || p_hat == 1.0) return {1, true};
  const double z2 = std::pow(critical_value(alpha), 2);
  const double n_hat = std::ceil(z2 * p_hat * (1.0 - p_hat) / (epsilon * epsilon));
  return {ceil_at_least_one(n_hat - std::ceil(z2)), false};
}

double scaling_function(double p_hat) {
  if (p_hat <= 0.5) return 1.0;
  if (p_hat <= 0.7) return 1.5;
  if (p_hat <= 0.8) return 2.0;
  if (p_hat <= 0.9) return 2.5;
  return 7.0;
}

void PlanConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (!(target_rel_error > 0.0) || !std::isfinite(target_rel_error)) {
    throw DomainError("target relative error must be positive");
  }
  if (n_init == 0) throw DomainError("n_init must be at least 1");
  if (n_cap < n_init) throw DomainError("n_cap must be at least n_init");
}

std::uint64_t relative_error_bound(double p_hat, const PlanConfig& cfg) {
  if (!(p_hat > 0.0 && p_hat < 1.0)) throw DomainError("relative_error_bound: p_hat must lie strictly inside (0, 1)");
  const double z = critical_value(cfg.alpha);
  const double e = cfg.target_rel_error;
  const double scale = cfg.use_scaling ? scaling_function(p_hat) : 1.0;
  const double base = std::pow(z * (1.0 + e) / e, 2) * (1.0 - p_hat) / p_hat - z * z;
  return ceil_at_least_one(scale * base);
}

double r_c_relative_error_at(double p_hat, double n, double alpha, double c) {
  const auto ac = agresti_coull(p_hat * n, n, alpha);
  return r_c_interval(ProbabilityInterval{p_hat, ac.lower, ac.upper}, c).rel_error;
}

RootFindResult exact_n_root_find(double p_hat, double e_T, double alpha, double c, std::uint64_t n_cap) {
  if (!(p_hat > 0.0 && p_hat < 1.0)) throw DomainError("exact_n_root_find: p_hat must lie strictly inside (0, 1)");
  if (!(e_T > 0.0)) throw DomainError("target relative error must be positive");
  if (n_cap == 0) throw DomainError("n_cap must be at least 1");
  auto meets = [&](std::uint64_t n) { return r_c_relative_error_at(p_hat, static_cast<double>(n), alpha, c) <= e_T; };

  if (meets(1)) return {1, false};
  // Invariant from here on: meets(lo) is false.
  std::uint64_t lo = 1;
  std::uint64_t hi = 2;
  while (!meets(std::min(hi, n_cap))) {
    if (hi >= n_cap) return {n_cap, true};
    lo = hi;
    hi *= 2;
  }
  hi = std::min(hi, n_cap);
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (meets(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {hi, false};
}

PlanResult adaptive_repeats(const SuccessOracle& oracle, const PlanConfig& cfg,
                            const std::function<void(const PlanRound&)>& on_round) {
  cfg.validate();
  if (!oracle) throw DomainError("adaptive_repeats: no oracle");

  auto draw = [&](std::uint64_t batch) {
    const std::uint64_t got = oracle(batch);
    if (got > batch) throw DomainError("oracle reported more successes than repeats");
    return got;
  };

  PlanResult result{0, confidence_interval(TrialTally(1, 0)), std::nullopt, {}, false};
  std::uint64_t n = cfg.n_init;
  std::uint64_t successes = draw(n);

  for (std::uint64_t round = 1;; ++round) {
    const TrialTally tally(n, successes);
    const double p_hat = point_estimate(tally, CiMethod::AgrestiCoull, cfg.alpha);
    PlanRound entry{round, n, successes, p_hat, std::nullopt, false};

    std::uint64_t target;
    if (successes == 0) {
      // The bound diverges as p -> 0; grow geometrically until a success.
      target = n * 2;
    } else {
      entry.bound = relative_error_bound(p_hat, cfg);
      target = *entry.bound;
    }

    const bool satisfied = entry.bound && n >= *entry.bound;
    const bool at_cap = n >= cfg.n_cap;
    entry.stop = satisfied || at_cap;
    result.trace.push_back(entry);
    if (on_round) on_round(entry);

    if (entry.stop) {
      result.final_n = n;
      result.final_estimate = confidence_interval(tally, CiMethod::AgrestiCoull, cfg.alpha);
      result.bound_value = entry.bound;
      result.capped = !satisfied;
      return result;
    }

    const std::uint64_t next = std::min(std::max(target, n + 1), cfg.n_cap);
    successes += draw(next - n);
    n = next;
  }
}

}  // namespace repeatstat
