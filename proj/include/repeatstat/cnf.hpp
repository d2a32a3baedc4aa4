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
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "repeatstat/rng.hpp"

namespace repeatstat {

/// Signed DIMACS literal: +v is variable v, -v its negation.
using Literal = std::int32_t;
using Clause = std::vector<Literal>;

/// One truth value per variable, index 0 is variable 1.
using Assignment = std::vector<std::uint8_t>;

struct CnfFormula {
  std::uint32_t num_vars = 0;
  std::vector<Clause> clauses;
  std::vector<bool> tautological;     // parallel to clauses
  std::vector<std::string> warnings;  // non-fatal parse diagnostics

  /// Appends a clause, dropping duplicate literals and flagging
  /// tautologies. Throws DomainError for an empty clause or a literal
  /// outside 1..num_vars.
  void add_clause(Clause clause);
};

/// Parses DIMACS CNF: `c` comment lines, one `p cnf <vars> <clauses>`
/// header, 0-terminated clauses that may span lines. A clause count that
/// disagrees with the header produces a warning; the parsed count wins.
/// Throws ParseError (with line number) on malformed input.
CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs_string(std::string_view text);
CnfFormula load_dimacs(const std::string& path);

void write_dimacs(std::ostream& out, const CnfFormula& formula);

/// Uniform random k-SAT: each clause has k distinct variables drawn
/// without replacement, each negated with probability 1/2.
CnfFormula generate_random_ksat(std::uint32_t k, std::uint32_t num_vars, std::uint32_t num_clauses,
                                const RngSpec& rng);

bool literal_true(Literal lit, const Assignment& a);

/// Number of clauses with no true literal.
std::size_t count_unsat(const CnfFormula& formula, const Assignment& a);

}  // namespace repeatstat
