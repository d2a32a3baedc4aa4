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

#include <atomic>
#include <chrono>
#include <cstdint>
#include <string>

#include "repeatstat/rng.hpp"

namespace repeatstat {

/// An external solver invoked once per repeat through /bin/sh. The
/// template may contain {seed} (a 31-bit seed derived per repeat) and
/// {repeat} (the 0-based repeat index).
struct ExternalSolverSpec {
  std::string command_template;
  int success_exit = 0;
  std::chrono::milliseconds timeout{60'000};

  void validate() const;
};

struct ExternalOutcome {
  bool success;
  bool timed_out;
  int exit_code;  // -1 when killed or not exited normally
};

std::string expand_template(const std::string& command_template, std::uint64_t seed, std::uint64_t repeat);

/// Runs one command with stdout/stderr discarded. On timeout the whole
/// process group is killed and the repeat counts as a failure.
ExternalOutcome run_external(const ExternalSolverSpec& spec, const std::string& command);

/// SuccessOracle over an external solver. Repeat r is seeded from
/// rng.child(r) regardless of batching.
class ExternalOracle {
 public:
  ExternalOracle(ExternalSolverSpec spec, RngSpec rng, unsigned workers = 1);

  std::uint64_t operator()(std::uint64_t batch);

  std::uint64_t repeats_run() const noexcept { return next_repeat_; }
  std::uint64_t timeouts() const noexcept { return timeouts_; }

  static std::uint64_t seed_for(const RngSpec& rng, std::uint64_t repeat);

 private:
  ExternalSolverSpec spec_;
  RngSpec rng_;
  unsigned workers_;
  std::uint64_t next_repeat_ = 0;
  std::uint64_t timeouts_ = 0;
};

}  // namespace repeatstat
