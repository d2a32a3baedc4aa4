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

#include "repeatstat/sim.hpp"

#include <algorithm>
#include <cmath>

#include "repeatstat/error.hpp"
#include "repeatstat/metrics.hpp"
#include "repeatstat/parallel.hpp"
#include "repeatstat/special_functions.hpp"

namespace repeatstat {

std::uint64_t bernoulli_batch(double p, std::uint64_t n, Rng& engine) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("bernoulli_batch: p must lie in [0, 1]");
  std::uint64_t successes = 0;
  for (std::uint64_t k = 0; k < n; ++k) successes += engine.bernoulli(p) ? 1 : 0;
  return successes;
}

std::uint64_t bernoulli_batch(double p, std::uint64_t n, const RngSpec& rng) {
  auto engine = rng.engine();
  return bernoulli_batch(p, n, engine);
}

ComparisonRow compare_optimizers(double p1, double p2, std::uint64_t n, std::uint64_t trials, double c,
                                 double alpha, const RngSpec& rng, unsigned workers) {
  if (!(p1 > p2)) throw DomainError("compare_optimizers: need p1 > p2");
  if (!(p2 >= 0.0 && p1 <= 1.0)) throw DomainError("compare_optimizers: probabilities must lie in [0, 1]");
  if (n == 0 || trials == 0) throw DomainError("compare_optimizers: n and trials must be positive");

  struct Outcome {
    bool correct;
    bool disjoint;
  };
  std::vector<Outcome> outcomes(trials);
  parallel_for(trials, workers, [&](std::size_t t) {
    auto engine = rng.child(t).engine();
    const TrialTally first(n, bernoulli_batch(p1, n, engine));
    const TrialTally second(n, bernoulli_batch(p2, n, engine));
    const auto r1 = r_c_interval(error_margin_interval(first, alpha), c, RepeatFloor::None);
    const auto r2 = r_c_interval(error_margin_interval(second, alpha), c, RepeatFloor::None);
    // Closed intervals: touching endpoints overlap.
    outcomes[t] = {r1.point < r2.point, r1.upper < r2.lower || r2.upper < r1.lower};
  });

  std::uint64_t correct = 0;
  std::uint64_t disjoint = 0;
  for (const auto& o : outcomes) {
    correct += o.correct ? 1 : 0;
    disjoint += o.disjoint ? 1 : 0;
  }
  const auto total = static_cast<double>(trials);
  return {p1, p2, n, trials, static_cast<double>(correct) / total, static_cast<double>(disjoint) / total};
}

double sample_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw DomainError("sample_quantile: empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("sample_quantile: q must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto below = static_cast<std::size_t>(std::floor(pos));
  const auto above = std::min(below + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(below);
  return values[below] + frac * (values[above] - values[below]);
}

double RelErrStats::fraction_within(double threshold) const {
  if (rel_errors.empty()) return 0.0;
  const auto hits = std::count_if(rel_errors.begin(), rel_errors.end(), [&](double e) { return e <= threshold; });
  return static_cast<double>(hits) / static_cast<double>(rel_errors.size());
}

RelErrStats adaptive_relerr_experiment(double p_true, const PlanConfig& cfg, double c, std::uint64_t trials,
                                       const RngSpec& rng, unsigned workers) {
  if (!(p_true > 0.0 && p_true < 1.0)) throw DomainError("adaptive_relerr_experiment: p_true must lie in (0, 1)");
  if (trials == 0) throw DomainError("adaptive_relerr_experiment: trials must be positive");
  cfg.validate();
  const double truth = repeats_to_confidence(p_true, c);

  RelErrStats stats{p_true, trials, std::vector<double>(trials), std::vector<std::uint64_t>(trials), 0.0, 0.0, 0.0};
  parallel_for(trials, workers, [&](std::size_t t) {
    auto engine = rng.child(t).engine();
    const SuccessOracle oracle = [&](std::uint64_t batch) { return bernoulli_batch(p_true, batch, engine); };
    const auto plan = adaptive_repeats(oracle, cfg);
    const double estimate = repeats_to_confidence(plan.final_estimate.proportion(), c);
    stats.rel_errors[t] = std::fabs(estimate - truth) / truth;
    stats.final_ns[t] = plan.final_n;
  });
  stats.median = sample_quantile(stats.rel_errors, 0.5);
  stats.q25 = sample_quantile(stats.rel_errors, 0.25);
  stats.q75 = sample_quantile(stats.rel_errors, 0.75);
  return stats;
}

ChunkedReport chunked_beta_check(std::span<const std::uint8_t> sample, std::uint64_t chunk_size, double alpha) {
  if (chunk_size == 0) throw DomainError("chunk size must be positive");
  if (sample.empty() || sample.size() % chunk_size != 0) {
    throw DomainError("sample length must be a positive multiple of the chunk size");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");

  ChunkedReport report{};
  report.chunk_size = chunk_size;
  report.alpha = alpha;
  const std::size_t chunks = sample.size() / chunk_size;
  report.chunk_estimates.reserve(chunks);
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < chunks; ++k) {
    std::uint64_t hits = 0;
    for (const auto bit : sample.subspan(k * chunk_size, chunk_size)) hits += bit != 0 ? 1 : 0;
    total += hits;
    report.chunk_estimates.push_back(static_cast<double>(hits) / static_cast<double>(chunk_size));
  }
  report.pooled = static_cast<double>(total) / static_cast<double>(sample.size());
  report.empirical_lower = sample_quantile(report.chunk_estimates, 0.5 * alpha);
  report.empirical_upper = sample_quantile(report.chunk_estimates, 1.0 - 0.5 * alpha);

  const double m = static_cast<double>(chunk_size);
  const BetaParams params{report.pooled * m + 0.5, (1.0 - report.pooled) * m + 0.5};
  report.beta_lower = report.pooled == 0.0 ? 0.0 : beta_quantile(0.5 * alpha, params);
  report.beta_upper = report.pooled == 1.0 ? 1.0 : beta_quantile(1.0 - 0.5 * alpha, params);
  report.few_chunks = chunks < 20;
  return report;
}

}  // namespace repeatstat
