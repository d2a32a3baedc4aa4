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

#include "repeatstat/cnf.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "repeatstat/error.hpp"

namespace repeatstat {

void CnfFormula::add_clause(Clause clause) {
  if (clause.empty()) throw DomainError("empty clause");
  Clause unique;
  unique.reserve(clause.size());
  bool taut = false;
  for (const auto lit : clause) {
    const auto var = static_cast<std::int64_t>(lit < 0 ? -static_cast<std::int64_t>(lit) : lit);
    if (lit == 0 || var > num_vars) throw DomainError("literal " + std::to_string(lit) + " out of range");
    if (std::find(unique.begin(), unique.end(), lit) != unique.end()) continue;
    if (std::find(unique.begin(), unique.end(), -lit) != unique.end()) taut = true;
    unique.push_back(lit);
  }
  clauses.push_back(std::move(unique));
  tautological.push_back(taut);
}

CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula formula;
  bool have_header = false;
  std::uint64_t declared_clauses = 0;
  Clause pending;
  std::size_t pending_line = 0;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == 'c') continue;
    if (line[first] == '%') break;  // SATLIB terminator
    if (line[first] == 'p') {
      if (have_header) throw ParseError("duplicate problem line", line_no);
      std::istringstream header(line.substr(first));
      std::string p, fmt;
      long long vars = -1, count = -1;
      if (!(header >> p >> fmt >> vars >> count) || p != "p" || fmt != "cnf" || vars < 0 || count < 0) {
        throw ParseError("malformed problem line, expected 'p cnf <vars> <clauses>'", line_no);
      }
      std::string extra;
      if (header >> extra) throw ParseError("trailing tokens on problem line", line_no);
      if (vars > std::numeric_limits<std::int32_t>::max()) throw ParseError("too many variables", line_no);
      formula.num_vars = static_cast<std::uint32_t>(vars);
      declared_clauses = static_cast<std::uint64_t>(count);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError("clause data before the 'p cnf' header", line_no);

    std::istringstream body(line);
    std::string token;
    while (body >> token) {
      long long value = 0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError("invalid literal '" + token + "'", line_no);
      }
      if (value == 0) {
        if (pending.empty()) throw ParseError("empty clause (0 before any literal)", line_no);
        formula.add_clause(std::move(pending));
        pending.clear();
        continue;
      }
      const long long var = value < 0 ? -value : value;
      if (var > formula.num_vars) {
        throw ParseError("literal " + token + " outside 1.." + std::to_string(formula.num_vars), line_no);
      }
      if (pending.empty()) pending_line = line_no;
      pending.push_back(static_cast<Literal>(value));
    }
  }

  if (!have_header) throw ParseError("missing 'p cnf' header", line_no == 0 ? 1 : line_no);
  if (!pending.empty()) {
    formula.warnings.push_back("line " + std::to_string(pending_line) + ": final clause not terminated by 0; accepted");
    formula.add_clause(std::move(pending));
  }
  if (formula.clauses.size() != declared_clauses) {
    formula.warnings.push_back("header declares " + std::to_string(declared_clauses) + " clauses but " +
                               std::to_string(formula.clauses.size()) + " were parsed");
  }
  return formula;
}

CnfFormula parse_dimacs_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

CnfFormula load_dimacs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  return parse_dimacs(in);
}

void write_dimacs(std::ostream& out, const CnfFormula& formula) {
  out << "p cnf " << formula.num_vars << ' ' << formula.clauses.size() << '\n';
  for (const auto& clause : formula.clauses) {
    for (const auto lit : clause) out << lit << ' ';
    out << "0\n";
  }
}

CnfFormula generate_random_ksat(std::uint32_t k, std::uint32_t num_vars, std::uint32_t num_clauses,
                                const RngSpec& rng) {
  if (k == 0) throw DomainError("clause width k must be positive");
  if (k > num_vars) throw DomainError("clause width k exceeds the number of variables");
  auto engine = rng.engine();
  CnfFormula formula;
  formula.num_vars = num_vars;
  formula.clauses.reserve(num_clauses);
  std::vector<std::uint32_t> pool(num_vars);
  std::iota(pool.begin(), pool.end(), 1u);
  for (std::uint32_t c = 0; c < num_clauses; ++c) {
    // Partial Fisher-Yates: the first k slots become the sample.
    Clause clause(k);
    for (std::uint32_t j = 0; j < k; ++j) {
      const auto pick = j + static_cast<std::uint32_t>(engine.below(num_vars - j));
      std::swap(pool[j], pool[pick]);
      const auto var = static_cast<Literal>(pool[j]);
      clause[j] = (engine() >> 63) != 0 ? -var : var;
    }
    formula.add_clause(std::move(clause));
  }
  return formula;
}

bool literal_true(Literal lit, const Assignment& a) {
  const auto var = static_cast<std::size_t>(lit < 0 ? -lit : lit);
  const bool value = a[var - 1] != 0;
  return lit > 0 ? value : !value;
}

std::size_t count_unsat(const CnfFormula& formula, const Assignment& a) {
  if (a.size() != formula.num_vars) throw DomainError("assignment length does not match the formula");
  std::size_t unsat = 0;
  for (const auto& clause : formula.clauses) {
    const bool sat = std::any_of(clause.begin(), clause.end(), [&](Literal lit) { return literal_true(lit, a); });
    unsat += sat ? 0 : 1;
  }
  return unsat;
}

}  // namespace repeatstat
