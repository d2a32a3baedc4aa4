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
#include <span>
#include <vector>

#include "repeatstat/binomial_ci.hpp"
#include "repeatstat/planner.hpp"
#include "repeatstat/rng.hpp"

namespace repeatstat {

/// Successes among n Bernoulli(p) draws from the given stream.
std::uint64_t bernoulli_batch(double p, std::uint64_t n, const RngSpec& rng);
std::uint64_t bernoulli_batch(double p, std::uint64_t n, Rng& engine);

/// Outcome of repeatedly comparing two optimizers with true success
/// probabilities p1 > p2 over n repeats each.
struct ComparisonRow {
  double p1;
  double p2;
  std::uint64_t n;
  std::uint64_t trials;
  double frac_correct_order;  // R_c estimate of optimizer 1 strictly below optimizer 2
  double frac_no_overlap;     // the two closed R_c intervals are disjoint
};

/// Each trial draws one tally per optimizer from stream rng.child(trial),
/// builds the error-margin interval (Agresti-Coull width around n_s / n)
/// and maps it through the unfloored R_c. Ties in R_c count as incorrect.
ComparisonRow compare_optimizers(double p1, double p2, std::uint64_t n, std::uint64_t trials, double c,
                                 double alpha, const RngSpec& rng, unsigned workers = 0);

struct RelErrStats {
  double p_true;
  std::uint64_t trials;
  std::vector<double> rel_errors;       // indexed by trial
  std::vector<std::uint64_t> final_ns;  // repeats used by each trial
  double median;
  double q25;
  double q75;

  /// Fraction of trials with relative error <= threshold.
  double fraction_within(double threshold) const;
};

/// Runs the adaptive controller `trials` times against a Bernoulli(p_true)
/// oracle (trial t uses stream rng.child(t)) and records
/// |R_c(n_s / n) - R_c(p_true)| / R_c(p_true) for each run.
RelErrStats adaptive_relerr_experiment(double p_true, const PlanConfig& cfg, double c, std::uint64_t trials,
                                       const RngSpec& rng, unsigned workers = 0);

struct ChunkedReport {
  std::uint64_t chunk_size;
  std::vector<double> chunk_estimates;
  double pooled;
  double alpha;
  double empirical_lower;  // alpha/2 sample quantile of the chunk estimates
  double empirical_upper;
  double beta_lower;  // Jeffreys Beta quantiles for a chunk-sized tally at the pooled rate
  double beta_upper;
  bool few_chunks;  // fewer than 20 chunks; quantiles unstable
};

/// Splits a long 0/1 sample into chunks and compares the spread of the
/// per-chunk proportions with the Beta band a single chunk would imply.
ChunkedReport chunked_beta_check(std::span<const std::uint8_t> sample, std::uint64_t chunk_size, double alpha);

/// Linear-interpolation sample quantile (the "type 7" definition).
double sample_quantile(std::vector<double> values, double q);

}  // namespace repeatstat
