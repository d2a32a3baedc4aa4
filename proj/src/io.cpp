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

#include "repeatstat/io.hpp"

#include <charconv>
#include <iomanip>
#include <string>

#include "repeatstat/error.hpp"

namespace repeatstat {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  for (auto& f : fields) {
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r')) f.remove_suffix(1);
  }
  return fields;
}

std::uint64_t parse_count(std::string_view field, std::string_view name, std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError("invalid " + std::string(name) + " '" + std::string(field) + "'", line);
  }
  return value;
}

// Reads the header line, skipping blank lines; throws unless it matches.
std::size_t expect_header(std::istream& in, std::string_view header) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line != header) throw ParseError("expected header '" + std::string(header) + "'", line_no);
    return line_no;
  }
  throw ParseError("missing header '" + std::string(header) + "'", line_no);
}

}  // namespace

void write_curve_csv(std::ostream& out, const SuccessCurve& curve) {
  out << kCurveCsvHeader << '\n';
  for (std::uint64_t i = 1; i <= curve.max_iter(); ++i) {
    out << i << ',' << curve.successes_at(i) << ',' << curve.n() << '\n';
  }
}

SuccessCurve read_curve_csv(std::istream& in) {
  std::size_t line_no = expect_header(in, kCurveCsvHeader);
  std::vector<std::uint64_t> counts;
  std::uint64_t n = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 3) throw ParseError("expected 3 fields", line_no);
    const auto iter = parse_count(fields[0], "iter", line_no);
    const auto successes = parse_count(fields[1], "successes", line_no);
    const auto row_n = parse_count(fields[2], "n", line_no);
    if (iter != counts.size() + 1) {
      throw ParseError("iter must run 1, 2, 3, ... without gaps (got " + std::to_string(iter) + ")", line_no);
    }
    if (counts.empty()) {
      n = row_n;
    } else if (row_n != n) {
      throw ParseError("n changes between rows", line_no);
    }
    if (successes > n) throw ParseError("successes exceed n", line_no);
    if (!counts.empty() && successes < counts.back()) throw ParseError("successes decrease with iter", line_no);
    counts.push_back(successes);
  }
  if (counts.empty()) throw ParseError("curve has no rows", line_no);
  if (n == 0) throw ParseError("n must be positive", line_no);
  return SuccessCurve(n, std::move(counts));
}

void write_records_csv(std::ostream& out, std::span<const RunRecord> records) {
  out << kRecordsCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.repeat_id << ',';
    if (r.first_success_iter) out << *r.first_success_iter;
    out << '\n';
  }
}

std::vector<RunRecord> read_records_csv(std::istream& in) {
  std::size_t line_no = expect_header(in, kRecordsCsvHeader);
  std::vector<RunRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 2) throw ParseError("expected 2 fields", line_no);
    RunRecord record{parse_count(fields[0], "repeat_id", line_no), std::nullopt};
    if (!fields[1].empty()) {
      const auto it = parse_count(fields[1], "first_success_iter", line_no);
      if (it == 0) throw ParseError("first_success_iter must be at least 1", line_no);
      record.first_success_iter = it;
    }
    records.push_back(record);
  }
  if (records.empty()) throw ParseError("no run records", line_no);
  return records;
}

void write_comparison_csv(std::ostream& out, std::span<const ComparisonRow> rows) {
  out << kComparisonCsvHeader << '\n';
  const auto flags = out.flags();
  const auto precision = out.precision();
  for (const auto& row : rows) {
    out << std::defaultfloat << row.p1 << ',' << row.p2 << ',' << row.n << ',' << std::fixed << std::setprecision(3)
        << row.frac_correct_order << ',' << row.frac_no_overlap << '\n' << std::setprecision(precision);
  }
  out.flags(flags);
}

void write_relerr_csv(std::ostream& out, std::span<const RelErrStats> runs) {
  out << kRelErrCsvHeader << '\n';
  const auto precision = out.precision(10);
  for (const auto& run : runs) {
    for (std::size_t t = 0; t < run.rel_errors.size(); ++t) {
      out << run.p_true << ',' << t << ',' << run.rel_errors[t] << '\n';
    }
  }
  out.precision(precision);
}

}  // namespace repeatstat
