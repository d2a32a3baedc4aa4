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

#include "repeatstat/cnf.hpp"
#include "repeatstat/metrics.hpp"
#include "repeatstat/rng.hpp"

namespace repeatstat {

struct WalksatConfig {
  double w = 0.5;                  // noise (walk) probability
  std::uint64_t max_flips = 5000;  // iteration budget; one flip per iteration
  RngSpec seed{};

  void validate() const;
};

struct WalksatRun {
  RunRecord record;
  Assignment final_assignment;  // satisfying witness when record succeeded
  std::uint64_t flips = 0;
};

/// Observer hook, called before each flip with the selected clause, the
/// variable about to be flipped and the current assignment.
using FlipObserver = std::function<void(std::size_t clause, std::uint32_t var, const Assignment& before)>;

/// One WalkSAT-SKC run. Starts from a uniform random assignment (or
/// `initial`), then per flip picks a random unsatisfied clause and flips
/// a zero-break variable if one exists; otherwise a random clause
/// variable with probability w, else a minimum-break variable. Random
/// ties are broken uniformly. A success found after f flips is recorded
/// at iteration max(f, 1); no success within max_flips leaves it unset.
WalksatRun walksat_skc_run(const CnfFormula& formula, const WalksatConfig& cfg, std::uint64_t repeat_id = 0,
                           std::optional<Assignment> initial = std::nullopt, const FlipObserver& observer = {});

/// `repeats` independent runs; repeat r uses cfg.seed.child(r), so the
/// output does not depend on the worker count.
std::vector<WalksatRun> run_experiment(const CnfFormula& formula, const WalksatConfig& cfg, std::uint64_t repeats,
                                       unsigned workers = 0);

std::vector<RunRecord> records_of(const std::vector<WalksatRun>& runs);

}  // namespace repeatstat
