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

#include "repeatstat/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "repeatstat/error.hpp"

namespace repeatstat {

namespace {

void check_confidence(double c) {
  if (!(c > 0.0 && c < 1.0)) throw DomainError("confidence c must lie in (0, 1)");
}

}  // namespace

double repeats_to_confidence(double p, double c, RepeatFloor floor) {
  check_confidence(c);
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("success probability must lie in [0, 1]");
  if (p == 0.0) return kInfinity;
  const double floor_value = floor == RepeatFloor::One ? 1.0 : 0.0;
  if (p == 1.0) return floor_value;
  if (floor == RepeatFloor::One && p >= c) return 1.0;
  const double r = std::log1p(-c) / std::log1p(-p);
  return floor == RepeatFloor::One ? std::max(r, 1.0) : r;
}

double max_relative_error(double point, double lower, double upper) {
  if (!std::isfinite(point) || !std::isfinite(upper)) return kInfinity;
  if (point <= 0.0) return point == upper && point == lower ? 0.0 : kInfinity;
  return std::max(point - lower, upper - point) / point;
}

MetricEstimate r_c_interval(const ProbabilityInterval& interval, double c, RepeatFloor floor) {
  MetricEstimate m{c, repeats_to_confidence(interval.point, c, floor), repeats_to_confidence(interval.upper, c, floor),
                   repeats_to_confidence(interval.lower, c, floor), 0.0};
  m.rel_error = max_relative_error(m.point, m.lower, m.upper);
  return m;
}

MetricEstimate r_c_interval(const SuccessEstimate& est, double c, RepeatFloor floor) {
  return r_c_interval(ProbabilityInterval{est.proportion(), est.lower, est.upper}, c, floor);
}

CetsEstimate scale_to_cets(std::uint64_t i, double e_itr, const MetricEstimate& repeats) {
  if (i == 0) throw DomainError("iteration budget must be at least 1");
  if (!(e_itr > 0.0) || !std::isfinite(e_itr)) throw DomainError("effort per iteration must be positive");
  const double scale = static_cast<double>(i) * e_itr;
  return CetsEstimate{i, e_itr, scale * repeats.point, scale * repeats.lower, scale * repeats.upper, repeats.rel_error,
                      repeats};
}

CetsEstimate cets(std::uint64_t i, double e_itr, const SuccessEstimate& est, double c) {
  return scale_to_cets(i, e_itr, r_c_interval(est, c));
}

SuccessCurve::SuccessCurve(std::uint64_t n, std::vector<std::uint64_t> successes_by_iter)
    : n_(n), counts_(std::move(successes_by_iter)) {
  if (n_ == 0) throw DomainError("success curve needs at least one repeat");
  if (counts_.empty()) throw DomainError("success curve needs at least one budget");
  std::uint64_t previous = 0;
  for (const auto count : counts_) {
    if (count < previous) throw DomainError("success counts must be nondecreasing in the budget");
    if (count > n_) throw DomainError("success count exceeds the number of repeats");
    previous = count;
  }
}

std::uint64_t SuccessCurve::successes_at(std::uint64_t i) const {
  if (i == 0 || i > counts_.size()) throw DomainError("budget outside 1..max_iter");
  return counts_[i - 1];
}

SuccessCurve success_curve(std::span<const RunRecord> records, std::uint64_t max_iter) {
  if (records.empty()) throw DomainError("success curve needs at least one run record");
  if (max_iter == 0) throw DomainError("max_iter must be at least 1");
  std::vector<std::uint64_t> first_hits(max_iter + 1, 0);
  for (const auto& record : records) {
    if (!record.first_success_iter) continue;
    const auto it = *record.first_success_iter;
    if (it == 0) throw DomainError("first-success iteration must be at least 1");
    // A success after the budget is a failure at this budget.
    if (it <= max_iter) ++first_hits[it];
  }
  std::vector<std::uint64_t> cumulative(max_iter);
  std::uint64_t running = 0;
  for (std::uint64_t i = 1; i <= max_iter; ++i) {
    running += first_hits[i];
    cumulative[i - 1] = running;
  }
  return SuccessCurve(records.size(), std::move(cumulative));
}

CetsOptimum optimize_cets(const SuccessCurve& curve, double c, double e_itr, CiMethod method, double alpha) {
  check_confidence(c);
  std::optional<std::uint64_t> best_i;
  double best_value = kInfinity;
  for (std::uint64_t i = 1; i <= curve.max_iter(); ++i) {
    if (curve.successes_at(i) == 0) continue;
    const double value = static_cast<double>(i) * e_itr * repeats_to_confidence(curve.proportion_at(i), c);
    if (!best_i || value < best_value) {
      best_i = i;
      best_value = value;
    }
  }
  if (!best_i) throw DomainError("no success observed");
  const auto est = confidence_interval(curve.tally_at(*best_i), method, alpha);
  return CetsOptimum{*best_i, cets(*best_i, e_itr, est, c)};
}

std::string_view to_string(RunMode mode) {
  switch (mode) {
    case RunMode::FailFast:
      return "fail-fast";
    case RunMode::Intermediate:
      return "intermediate";
    case RunMode::Patient:
      return "patient";
  }
  return "unknown";
}

RunMode classify_mode(std::uint64_t i_star, std::uint64_t max_iter) {
  if (max_iter == 0 || i_star == 0 || i_star > max_iter) throw DomainError("classify_mode: need 1 <= i* <= max_iter");
  const double fraction = static_cast<double>(i_star) / static_cast<double>(max_iter);
  if (fraction <= 0.1) return RunMode::FailFast;
  if (fraction >= 0.9) return RunMode::Patient;
  return RunMode::Intermediate;
}

}  // namespace repeatstat
