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

#include "repeatstat/walksat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "repeatstat/error.hpp"
#include "repeatstat/parallel.hpp"

namespace repeatstat {

namespace {

std::size_t var_of(Literal lit) { return static_cast<std::size_t>(lit < 0 ? -lit : lit); }

// Search state over the non-tautological clauses of a formula.
class SkcSearch {
 public:
  SkcSearch(const CnfFormula& formula, Assignment assignment)
      : formula_(formula),
        assignment_(std::move(assignment)),
        true_count_(formula.clauses.size(), 0),
        unsat_pos_(formula.clauses.size(), kAbsent),
        occurrences_(2 * (static_cast<std::size_t>(formula.num_vars) + 1)) {
    for (std::size_t c = 0; c < formula_.clauses.size(); ++c) {
      if (formula_.tautological[c]) continue;  // always satisfied
      for (const auto lit : formula_.clauses[c]) {
        occurrences_[slot(lit)].push_back(c);
        if (literal_true(lit, assignment_)) ++true_count_[c];
      }
      if (true_count_[c] == 0) add_unsat(c);
    }
  }

  bool solved() const { return unsat_.empty(); }
  const Assignment& assignment() const { return assignment_; }

  std::size_t random_unsat_clause(Rng& rng) const { return unsat_[rng.below(unsat_.size())]; }

  // Clauses that become unsatisfied if `var` is flipped.
  std::size_t break_count(std::size_t var) const {
    const Literal now_true = assignment_[var - 1] != 0 ? static_cast<Literal>(var) : -static_cast<Literal>(var);
    std::size_t breaks = 0;
    for (const auto c : occurrences_[slot(now_true)]) breaks += true_count_[c] == 1 ? 1 : 0;
    return breaks;
  }

  void flip(std::size_t var) {
    const Literal was_true = assignment_[var - 1] != 0 ? static_cast<Literal>(var) : -static_cast<Literal>(var);
    assignment_[var - 1] ^= 1;
    for (const auto c : occurrences_[slot(was_true)]) {
      if (--true_count_[c] == 0) add_unsat(c);
    }
    for (const auto c : occurrences_[slot(-was_true)]) {
      if (true_count_[c]++ == 0) remove_unsat(c);
    }
  }

 private:
  static constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();

  static std::size_t slot(Literal lit) { return 2 * var_of(lit) + (lit < 0 ? 1 : 0); }

  void add_unsat(std::size_t c) {
    unsat_pos_[c] = unsat_.size();
    unsat_.push_back(c);
  }

  void remove_unsat(std::size_t c) {
    const std::size_t pos = unsat_pos_[c];
    const std::size_t last = unsat_.back();
    unsat_[pos] = last;
    unsat_pos_[last] = pos;
    unsat_.pop_back();
    unsat_pos_[c] = kAbsent;
  }

  const CnfFormula& formula_;
  Assignment assignment_;
  std::vector<std::uint32_t> true_count_;
  std::vector<std::size_t> unsat_;
  std::vector<std::size_t> unsat_pos_;
  std::vector<std::vector<std::size_t>> occurrences_;
};

}  // namespace

void WalksatConfig::validate() const {
  if (!(w >= 0.0 && w <= 1.0)) throw DomainError("walk probability w must lie in [0, 1]");
  if (max_flips == 0) throw DomainError("max_flips must be at least 1");
}

WalksatRun walksat_skc_run(const CnfFormula& formula, const WalksatConfig& cfg, std::uint64_t repeat_id,
                           std::optional<Assignment> initial, const FlipObserver& observer) {
  cfg.validate();
  auto rng = cfg.seed.engine();

  Assignment start;
  if (initial) {
    if (initial->size() != formula.num_vars) throw DomainError("initial assignment length does not match the formula");
    start = std::move(*initial);
  } else {
    start.resize(formula.num_vars);
    for (auto& v : start) v = static_cast<std::uint8_t>(rng() >> 63);
  }

  SkcSearch search(formula, std::move(start));
  std::vector<std::size_t> candidates;
  std::uint64_t flips = 0;
  for (;;) {
    if (search.solved()) {
      return {{repeat_id, std::max<std::uint64_t>(flips, 1)}, search.assignment(), flips};
    }
    if (flips == cfg.max_flips) break;

    const std::size_t c = search.random_unsat_clause(rng);
    const auto& clause = formula.clauses[c];

    // Break counts; collect the minimum-break variables.
    std::size_t best = std::numeric_limits<std::size_t>::max();
    candidates.clear();
    for (const auto lit : clause) {
      const std::size_t b = search.break_count(var_of(lit));
      if (b < best) {
        best = b;
        candidates.clear();
      }
      if (b == best) candidates.push_back(var_of(lit));
    }

    std::size_t chosen;
    if (best == 0) {
      chosen = candidates[rng.below(candidates.size())];
    } else if (rng.bernoulli(cfg.w)) {
      chosen = var_of(clause[rng.below(clause.size())]);
    } else {
      chosen = candidates[rng.below(candidates.size())];
    }
    if (observer) observer(c, static_cast<std::uint32_t>(chosen), search.assignment());
    search.flip(chosen);
    ++flips;
  }
  return {{repeat_id, std::nullopt}, search.assignment(), flips};
}

std::vector<WalksatRun> run_experiment(const CnfFormula& formula, const WalksatConfig& cfg, std::uint64_t repeats,
                                       unsigned workers) {
  if (repeats == 0) throw DomainError("repeats must be at least 1");
  cfg.validate();
  std::vector<WalksatRun> runs(repeats);
  parallel_for(repeats, workers, [&](std::size_t r) {
    WalksatConfig per_repeat = cfg;
    per_repeat.seed = cfg.seed.child(r);
    runs[r] = walksat_skc_run(formula, per_repeat, r);
  });
  return runs;
}

std::vector<RunRecord> records_of(const std::vector<WalksatRun>& runs) {
  std::vector<RunRecord> records;
  records.reserve(runs.size());
  for (const auto& run : runs) records.push_back(run.record);
  return records;
}

}  // namespace repeatstat
