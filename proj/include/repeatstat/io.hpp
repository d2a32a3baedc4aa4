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

#include <istream>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "repeatstat/metrics.hpp"
#include "repeatstat/sim.hpp"

namespace repeatstat {

inline constexpr std::string_view kCurveCsvHeader = "iter,successes,n";
inline constexpr std::string_view kRecordsCsvHeader = "repeat_id,first_success_iter";
inline constexpr std::string_view kComparisonCsvHeader = "p1,p2,n,frac_correct_order,frac_no_overlap";
inline constexpr std::string_view kRelErrCsvHeader = "p_true,trial,rel_error";

void write_curve_csv(std::ostream& out, const SuccessCurve& curve);

/// Rows must cover iter = 1, 2, ... contiguously with a constant n.
SuccessCurve read_curve_csv(std::istream& in);

/// Censored runs are written with an empty second field.
void write_records_csv(std::ostream& out, std::span<const RunRecord> records);
std::vector<RunRecord> read_records_csv(std::istream& in);

void write_comparison_csv(std::ostream& out, std::span<const ComparisonRow> rows);

/// Long format, one row per (p_true, trial).
void write_relerr_csv(std::ostream& out, std::span<const RelErrStats> runs);

}  // namespace repeatstat
