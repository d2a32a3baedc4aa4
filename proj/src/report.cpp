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

#include "repeatstat/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>

namespace repeatstat {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json encode_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

double decode_real(const Json& value) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw nlohmann::json::type_error::create(302, "expected a number or an infinity marker", &value);
}

void to_json(Json& j, const Provenance& p) {
  j = Json{{"master_seed", p.rng.master_seed},
           {"stream_id", p.rng.stream_id},
           {"generator", p.generator},
           {"tool_version", p.tool_version},
           {"timestamp", p.timestamp}};
}

void from_json(const Json& j, Provenance& p) {
  p.rng.master_seed = j.at("master_seed").get<std::uint64_t>();
  p.rng.stream_id = j.at("stream_id").get<std::uint64_t>();
  p.generator = j.at("generator").get<std::string>();
  p.tool_version = j.at("tool_version").get<std::string>();
  p.timestamp = j.at("timestamp").get<std::string>();
}

void to_json(Json& j, const Report& r) {
  j = Json{{"schema_version", r.schema_version},
           {"command", r.command},
           {"inputs", r.inputs},
           {"results", r.results},
           {"provenance", r.provenance}};
}

void from_json(const Json& j, Report& r) {
  r.schema_version = j.at("schema_version").get<std::string>();
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs");
  r.results = j.at("results");
  r.provenance = j.at("provenance").get<Provenance>();
}

std::vector<std::string> validate_report(const Json& report) {
  std::vector<std::string> problems;
  if (!report.is_object()) return {"report must be a JSON object"};
  auto require = [&](const Json& obj, std::string_view key, auto predicate, std::string_view type) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      problems.push_back("missing field '" + std::string(key) + "'");
    } else if (!predicate(*it)) {
      problems.push_back("field '" + std::string(key) + "' must be " + std::string(type));
    }
  };
  auto is_string = [](const Json& v) { return v.is_string(); };
  auto is_object = [](const Json& v) { return v.is_object(); };
  auto is_unsigned = [](const Json& v) { return v.is_number_unsigned(); };

  require(report, "schema_version", is_string, "a string");
  require(report, "command", is_string, "a string");
  require(report, "inputs", is_object, "an object");
  require(report, "results", is_object, "an object");
  require(report, "provenance", is_object, "an object");
  if (const auto it = report.find("schema_version"); it != report.end() && it->is_string() && *it != kSchemaVersion) {
    problems.push_back("unsupported schema_version " + it->get<std::string>());
  }
  if (const auto it = report.find("provenance"); it != report.end() && it->is_object()) {
    require(*it, "master_seed", is_unsigned, "an unsigned integer");
    require(*it, "stream_id", is_unsigned, "an unsigned integer");
    require(*it, "generator", is_string, "a string");
    require(*it, "tool_version", is_string, "a string");
    require(*it, "timestamp", is_string, "a string");
  }
  return problems;
}

Json to_json(const SuccessEstimate& est) {
  return Json{{"method", to_string(est.method)},
              {"alpha", est.alpha},
              {"n", est.tally.n()},
              {"successes", est.tally.successes()},
              {"proportion", est.proportion()},
              {"point", est.point},
              {"lower", est.lower},
              {"upper", est.upper},
              {"width", interval_width(est)},
              {"relative_width", encode_real(relative_width(est))},
              {"degenerate", est.degenerate}};
}

Json to_json(const MetricEstimate& m) {
  return Json{{"c", m.c},
              {"point", encode_real(m.point)},
              {"lower", encode_real(m.lower)},
              {"upper", encode_real(m.upper)},
              {"rel_error", encode_real(m.rel_error)}};
}

Json to_json(const CetsEstimate& e) {
  return Json{{"i", e.i},
              {"e_itr", e.e_itr},
              {"point", encode_real(e.point)},
              {"lower", encode_real(e.lower)},
              {"upper", encode_real(e.upper)},
              {"rel_error", encode_real(e.rel_error)}};
}

Json to_json(const PlanRound& round) {
  return Json{{"round", round.round},
              {"n_total", round.n_total},
              {"n_success", round.n_success},
              {"p_hat", round.p_hat},
              {"bound", round.bound ? Json(*round.bound) : Json(nullptr)},
              {"stop", round.stop}};
}

Json to_json(const PlanResult& plan) {
  Json trace = Json::array();
  for (const auto& r : plan.trace) trace.push_back(to_json(r));
  return Json{{"final_n", plan.final_n},
              {"final_estimate", to_json(plan.final_estimate)},
              {"bound_value", plan.bound_value ? Json(*plan.bound_value) : Json(nullptr)},
              {"capped", plan.capped},
              {"trace", std::move(trace)}};
}

Json to_json(const ComparisonRow& row) {
  return Json{{"p1", row.p1},
              {"p2", row.p2},
              {"n", row.n},
              {"trials", row.trials},
              {"frac_correct_order", row.frac_correct_order},
              {"frac_no_overlap", row.frac_no_overlap}};
}

Json to_json(const RelErrStats& stats) {
  return Json{{"p_true", stats.p_true},       {"trials", stats.trials},
              {"median", stats.median},       {"q25", stats.q25},
              {"q75", stats.q75},             {"fraction_within_0_1", stats.fraction_within(0.1)},
              {"mean_final_n", [&] {
                 double total = 0.0;
                 for (const auto n : stats.final_ns) total += static_cast<double>(n);
                 return stats.final_ns.empty() ? 0.0 : total / static_cast<double>(stats.final_ns.size());
               }()}};
}

Json to_json(const ChunkedReport& report) {
  return Json{{"chunk_size", report.chunk_size},
              {"chunks", report.chunk_estimates.size()},
              {"alpha", report.alpha},
              {"pooled", report.pooled},
              {"empirical_band", {report.empirical_lower, report.empirical_upper}},
              {"beta_band", {report.beta_lower, report.beta_upper}},
              {"few_chunks_warning", report.few_chunks}};
}

}  // namespace repeatstat
