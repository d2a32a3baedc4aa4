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

#include "repeatstat/binomial_ci.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "repeatstat/error.hpp"
#include "repeatstat/special_functions.hpp"

namespace repeatstat {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
}

double clip01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

std::string_view to_string(CiMethod method) {
  switch (method) {
    case CiMethod::Wald:
      return "wald";
    case CiMethod::Wilson:
      return "wilson";
    case CiMethod::AgrestiCoull:
      return "agresti-coull";
    case CiMethod::Jeffreys:
      return "jeffreys";
  }
  return "unknown";
}

std::optional<CiMethod> parse_ci_method(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  std::replace(lower.begin(), lower.end(), '_', '-');
  if (lower == "wald") return CiMethod::Wald;
  if (lower == "wilson") return CiMethod::Wilson;
  if (lower == "agresti-coull" || lower == "ac" || lower == "agresticoull") return CiMethod::AgrestiCoull;
  if (lower == "jeffreys") return CiMethod::Jeffreys;
  return std::nullopt;
}

TrialTally::TrialTally(std::uint64_t n, std::uint64_t successes) : n_(n), successes_(successes) {
  if (n == 0) throw DomainError("tally needs at least one repeat");
  if (successes > n) throw DomainError("tally successes exceed repeats");
}

double point_estimate(const TrialTally& tally, CiMethod method, double alpha) {
  check_alpha(alpha);
  if (method != CiMethod::AgrestiCoull) return tally.proportion();
  const double z2 = std::pow(critical_value(alpha), 2);
  return (static_cast<double>(tally.successes()) + 0.5 * z2) / (static_cast<double>(tally.n()) + z2);
}

ProbabilityInterval agresti_coull(double successes, double n, double alpha) {
  check_alpha(alpha);
  if (!(n > 0.0) || successes < 0.0 || successes > n) throw DomainError("agresti_coull: need 0 <= successes <= n, n > 0");
  const double z = critical_value(alpha);
  const double n_hat = n + z * z;
  const double p_hat = (successes + 0.5 * z * z) / n_hat;
  const double half = z / std::sqrt(n_hat) * std::sqrt(p_hat * (1.0 - p_hat));
  return {p_hat, clip01(p_hat - half), clip01(p_hat + half)};
}

double error_margin(double p_hat, double n, double alpha) {
  check_alpha(alpha);
  const double z = critical_value(alpha);
  return z / std::sqrt(n + z * z) * std::sqrt(p_hat * (1.0 - p_hat));
}

SuccessEstimate confidence_interval(const TrialTally& tally, CiMethod method, double alpha) {
  check_alpha(alpha);
  const double z = critical_value(alpha);
  const auto n = static_cast<double>(tally.n());
  const auto ns = static_cast<double>(tally.successes());
  const double p = tally.proportion();

  SuccessEstimate est{p, p, p, alpha, method, tally, false};
  switch (method) {
    case CiMethod::Wald: {
      const double half = z / std::sqrt(n) * std::sqrt(p * (1.0 - p));
      est.lower = p - half;
      est.upper = p + half;
      break;
    }
    case CiMethod::Wilson: {
      const double z2 = z * z;
      const double scale = 1.0 / (1.0 + z2 / n);
      const double centre = p + z2 / (2.0 * n);
      const double half = z / (2.0 * n) * std::sqrt(4.0 * n * p * (1.0 - p) + z2);
      // The score interval touches 0 at n_s = 0 and 1 at n_s = n; set
      // those ends exactly rather than through cancellation.
      est.lower = tally.successes() == 0 ? 0.0 : scale * (centre - half);
      est.upper = tally.successes() == tally.n() ? 1.0 : scale * (centre + half);
      break;
    }
    case CiMethod::AgrestiCoull: {
      const auto ac = agresti_coull(ns, n, alpha);
      est.point = ac.point;
      est.lower = ac.lower;
      est.upper = ac.upper;
      break;
    }
    case CiMethod::Jeffreys: {
      const BetaParams posterior{ns + 0.5, static_cast<double>(tally.failures()) + 0.5};
      est.lower = tally.successes() == 0 ? 0.0 : beta_quantile(0.5 * alpha, posterior);
      est.upper = tally.successes() == tally.n() ? 1.0 : beta_quantile(1.0 - 0.5 * alpha, posterior);
      break;
    }
  }
  est.lower = clip01(est.lower);
  est.upper = clip01(est.upper);
  est.degenerate = est.lower == est.upper;
  return est;
}

SuccessEstimate error_margin_interval(const TrialTally& tally, double alpha) {
  const double p = tally.proportion();
  const double half = error_margin(p, static_cast<double>(tally.n()), alpha);
  SuccessEstimate est{p, clip01(p - half), clip01(p + half), alpha, CiMethod::AgrestiCoull, tally, false};
  est.degenerate = est.lower == est.upper;
  return est;
}

double interval_width(const SuccessEstimate& est) { return est.upper - est.lower; }

double relative_width(const SuccessEstimate& est) {
  if (est.point <= 0.0) return std::numeric_limits<double>::infinity();
  return interval_width(est) / est.point;
}

double exact_coverage(CiMethod method, double p, std::uint64_t n, double alpha) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("exact_coverage: p must lie in [0, 1]");
  if (n == 0) throw DomainError("exact_coverage: n must be positive");
  double coverage = 0.0;
  for (std::uint64_t k = 0; k <= n; ++k) {
    const auto est = confidence_interval(TrialTally(n, k), method, alpha);
    if (est.lower <= p && p <= est.upper) coverage += binomial_pmf(k, n, p);
  }
  return std::min(coverage, 1.0);
}

}  // namespace repeatstat
