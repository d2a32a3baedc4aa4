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

#include "repeatstat/subprocess.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <thread>
#include <vector>

#include "repeatstat/error.hpp"
#include "repeatstat/parallel.hpp"

namespace repeatstat {

void ExternalSolverSpec::validate() const {
  if (command_template.empty()) throw DomainError("solver command template is empty");
  if (timeout.count() <= 0) throw DomainError("solver timeout must be positive");
}

std::string expand_template(const std::string& command_template, std::uint64_t seed, std::uint64_t repeat) {
  std::string out;
  out.reserve(command_template.size() + 16);
  for (std::size_t i = 0; i < command_template.size();) {
    if (command_template.compare(i, 6, "{seed}") == 0) {
      out += std::to_string(seed);
      i += 6;
    } else if (command_template.compare(i, 8, "{repeat}") == 0) {
      out += std::to_string(repeat);
      i += 8;
    } else {
      out += command_template[i++];
    }
  }
  return out;
}

ExternalOutcome run_external(const ExternalSolverSpec& spec, const std::string& command) {
  spec.validate();
  const pid_t pid = fork();
  if (pid < 0) throw std::runtime_error("fork failed");
  if (pid == 0) {
    setpgid(0, 0);
    const int devnull = open("/dev/null", O_RDWR);
    if (devnull >= 0) {
      dup2(devnull, STDIN_FILENO);
      dup2(devnull, STDOUT_FILENO);
      dup2(devnull, STDERR_FILENO);
    }
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);

  const auto deadline = std::chrono::steady_clock::now() + spec.timeout;
  auto pause = std::chrono::microseconds(200);
  int status = 0;
  for (;;) {
    const pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (done < 0 && errno != EINTR) throw std::runtime_error("waitpid failed");
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
      }
      return {false, true, -1};
    }
    std::this_thread::sleep_for(pause);
    pause = std::min(pause * 2, std::chrono::microseconds(20'000));
  }
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code == spec.success_exit, false, code};
}

ExternalOracle::ExternalOracle(ExternalSolverSpec spec, RngSpec rng, unsigned workers)
    : spec_(std::move(spec)), rng_(rng), workers_(workers == 0 ? 1 : workers) {
  spec_.validate();
}

std::uint64_t ExternalOracle::seed_for(const RngSpec& rng, std::uint64_t repeat) {
  return rng.child(repeat).engine()() >> 33;
}

std::uint64_t ExternalOracle::operator()(std::uint64_t batch) {
  std::vector<ExternalOutcome> outcomes(batch);
  const std::uint64_t first = next_repeat_;
  parallel_for(batch, workers_, [&](std::size_t k) {
    const std::uint64_t repeat = first + k;
    outcomes[k] = run_external(spec_, expand_template(spec_.command_template, seed_for(rng_, repeat), repeat));
  });
  next_repeat_ += batch;
  std::uint64_t successes = 0;
  for (const auto& o : outcomes) {
    successes += o.success ? 1 : 0;
    timeouts_ += o.timed_out ? 1 : 0;
  }
  return successes;
}

}  // namespace repeatstat
