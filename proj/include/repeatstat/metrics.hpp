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
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "repeatstat/binomial_ci.hpp"

namespace repeatstat {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Whether repeat counts are floored at one run. The floored form is the
/// definition of R_c; the unfloored ln(1-c)/ln(1-p) is the simplified
/// form valid for p <= c and maps p = 1 to 0.
enum class RepeatFloor { One, None };

/// R_c = max(ln(1 - c) / ln(1 - p), 1). p = 0 gives +inf; p = 1 gives 1
/// (or 0 without the floor).
double repeats_to_confidence(double p, double c, RepeatFloor floor = RepeatFloor::One);

/// R_c point value with its asymmetric interval and max relative error.
/// Infinite values stand for "no success observed" and compare above
/// every finite value.
struct MetricEstimate {
  double c;
  double point;
  double lower;
  double upper;
  double rel_error;
};

/// max(point - lower, upper - point) / point.
double max_relative_error(double point, double lower, double upper);

/// Maps a success-probability interval through R_c. The point is R_c of
/// interval.point; R_c^- uses the upper probability bound and R_c^+ the
/// lower one.
MetricEstimate r_c_interval(const ProbabilityInterval& interval, double c, RepeatFloor floor = RepeatFloor::One);

/// R_c interval for an estimate. The point value uses the raw proportion
/// n_s / n; the bounds come from the estimate's interval.
MetricEstimate r_c_interval(const SuccessEstimate& est, double c, RepeatFloor floor = RepeatFloor::One);

struct CetsEstimate {
  std::uint64_t i;
  double e_itr;
  double point;
  double lower;
  double upper;
  double rel_error;
  MetricEstimate repeats;
};

/// CETS_c(i) = i * e_itr * R_c(i), with the interval scaled alike.
CetsEstimate cets(std::uint64_t i, double e_itr, const SuccessEstimate& est, double c);
CetsEstimate scale_to_cets(std::uint64_t i, double e_itr, const MetricEstimate& repeats);

/// One repeat of a budgeted run: the iteration at which the target was
/// first reached, or nullopt if it was never reached within the budget.
struct RunRecord {
  std::uint64_t repeat_id;
  std::optional<std::uint64_t> first_success_iter;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Cumulative success counts over iteration budgets 1..max_iter.
class SuccessCurve {
 public:
  /// successes_by_iter[i - 1] is the count for budget i. Throws
  /// DomainError unless the counts are nondecreasing and <= n.
  SuccessCurve(std::uint64_t n, std::vector<std::uint64_t> successes_by_iter);

  std::uint64_t n() const noexcept { return n_; }
  std::uint64_t max_iter() const noexcept { return counts_.size(); }
  std::uint64_t successes_at(std::uint64_t i) const;
  TrialTally tally_at(std::uint64_t i) const { return TrialTally(n_, successes_at(i)); }
  double proportion_at(std::uint64_t i) const {
    return static_cast<double>(successes_at(i)) / static_cast<double>(n_);
  }
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

 private:
  std::uint64_t n_;
  std::vector<std::uint64_t> counts_;
};

/// Records that first succeed after max_iter count as failures.
SuccessCurve success_curve(std::span<const RunRecord> records, std::uint64_t max_iter);

struct CetsOptimum {
  std::uint64_t i_star;
  CetsEstimate estimate;
};

/// argmin over budgets of i * e_itr * R_c(p_s(i)) using the raw success
/// proportion at each budget. Budgets without any success are skipped;
/// ties go to the smallest i. The returned estimate carries the interval
/// at i*. Throws DomainError("no success observed") on an all-zero curve.
CetsOptimum optimize_cets(const SuccessCurve& curve, double c, double e_itr, CiMethod method = kDefaultMethod,
                          double alpha = kDefaultAlpha);

enum class RunMode { FailFast, Intermediate, Patient };

std::string_view to_string(RunMode mode);

/// Fail-fast when i* <= 10% of the budget, patient when i* >= 90%.
RunMode classify_mode(std::uint64_t i_star, std::uint64_t max_iter);

}  // namespace repeatstat
