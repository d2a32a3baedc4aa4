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

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "repeatstat/binomial_ci.hpp"
#include "repeatstat/metrics.hpp"
#include "repeatstat/planner.hpp"
#include "repeatstat/rng.hpp"
#include "repeatstat/sim.hpp"

namespace repeatstat {

using Json = nlohmann::json;

inline constexpr std::string_view kSchemaVersion = "1.0";

struct Provenance {
  RngSpec rng{};
  std::string generator{RngSpec::kGenerator};
  std::string tool_version{REPEATSTAT_VERSION};
  std::string timestamp;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Envelope for every CLI result.
struct Report {
  std::string schema_version{kSchemaVersion};
  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  Provenance provenance;

  friend bool operator==(const Report&, const Report&) = default;
};

/// UTC time in ISO 8601 with second resolution.
std::string utc_timestamp();

/// JSON has no infinities: non-finite reals are written as the strings
/// "inf", "-inf" and "nan", and read back by decode_real.
Json encode_real(double value);
double decode_real(const Json& value);

/// Structural check of a serialized report; returns the list of problems
/// (empty when valid). Mirrors schemas/report.schema.json.
std::vector<std::string> validate_report(const Json& report);

void to_json(Json& j, const Provenance& p);
void from_json(const Json& j, Provenance& p);
void to_json(Json& j, const Report& r);
void from_json(const Json& j, Report& r);

Json to_json(const SuccessEstimate& est);
Json to_json(const MetricEstimate& m);
Json to_json(const CetsEstimate& e);
Json to_json(const PlanRound& round);
Json to_json(const PlanResult& plan);
Json to_json(const ComparisonRow& row);
Json to_json(const RelErrStats& stats);
Json to_json(const ChunkedReport& report);

}  // namespace repeatstat
