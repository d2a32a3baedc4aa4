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


// repeatstat command-line driver. Every subcommand writes one JSON report
// (stdout unless --out is given); tabular data goes to the CSV paths the
// user names.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "repeatstat/binomial_ci.hpp"
#include "repeatstat/cnf.hpp"
#include "repeatstat/error.hpp"
#include "repeatstat/io.hpp"
#include "repeatstat/metrics.hpp"
#include "repeatstat/parallel.hpp"
#include "repeatstat/planner.hpp"
#include "repeatstat/report.hpp"
#include "repeatstat/sim.hpp"
#include "repeatstat/special_functions.hpp"
#include "repeatstat/subprocess.hpp"
#include "repeatstat/walksat.hpp"

namespace rs = repeatstat;
using rs::Json;

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kData = 3, kNumeric = 4 };

// Bad flag values found after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unreadable or inconsistent input data.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::string out;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

rs::CiMethod method_from(const std::string& name) {
  const auto m = rs::parse_ci_method(name);
  require(m.has_value(), "unknown CI method '" + name + "' (wald, wilson, ac, jeffreys)");
  return *m;
}

void check_alpha(double alpha) { require(alpha > 0.0 && alpha < 1.0, "--alpha must lie in (0, 1)"); }
void check_c(double c) { require(c > 0.0 && c < 1.0, "--c must lie in (0, 1)"); }

rs::Report make_report(const std::string& command, const Common& common, Json inputs) {
  rs::Report r;
  r.command = command;
  r.inputs = std::move(inputs);
  r.provenance.rng = rs::RngSpec{common.seed, 0};
  r.provenance.timestamp = rs::utc_timestamp();
  return r;
}

void emit(const rs::Report& report, const Common& common) {
  const Json j = report;
  if (common.out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(common.out);
  if (!f) throw DataError("cannot write " + common.out);
  f << j.dump(2) << '\n';
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write " + path);
  return f;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot read " + path);
  return f;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == s.size() && !s.empty(), "bad number '" + s + "' in " + what);
  return v;
}

// "0.1..0.9" (step 0.1), "0.1..0.9:0.2", or a comma list.
std::vector<double> parse_p_list(const std::string& spec) {
  std::vector<double> ps;
  if (const auto dots = spec.find(".."); dots != std::string::npos) {
    std::string tail = spec.substr(dots + 2);
    double step = 0.1;
    if (const auto colon = tail.find(':'); colon != std::string::npos) {
      step = parse_double(tail.substr(colon + 1), "--p");
      tail.resize(colon);
    }
    const double lo = parse_double(spec.substr(0, dots), "--p");
    const double hi = parse_double(tail, "--p");
    require(step > 0.0 && lo <= hi, "--p range must be lo..hi[:step] with lo <= hi and step > 0");
    const auto count = static_cast<std::uint64_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::uint64_t k = 0; k < count; ++k) ps.push_back(std::round((lo + step * static_cast<double>(k)) * 1e9) / 1e9);
  } else {
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ',');) ps.push_back(parse_double(item, "--p"));
  }
  require(!ps.empty(), "--p is empty");
  for (const double p : ps) require(p > 0.0 && p < 1.0, "--p values must lie in (0, 1)");
  return ps;
}

struct GenerateSpec {
  std::uint32_t k = 4;
  std::uint32_t vars = 50;
  std::uint32_t clauses = 499;
};

// "k=4,vars=50,clauses=499"; omitted keys keep their defaults.
GenerateSpec parse_generate(const std::string& spec) {
  GenerateSpec g;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto eq = item.find('=');
    require(eq != std::string::npos, "--generate expects key=value pairs, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const double value = parse_double(item.substr(eq + 1), "--generate");
    require(value >= 1 && value == std::floor(value) && value < 1e9, "--generate values must be positive integers");
    const auto v = static_cast<std::uint32_t>(value);
    if (key == "k") g.k = v;
    else if (key == "vars") g.vars = v;
    else if (key == "clauses") g.clauses = v;
    else throw UsageError("unknown --generate key '" + key + "'");
  }
  require(g.k <= g.vars, "--generate needs k <= vars");
  return g;
}

// Formula generation and solving draw from separate streams of the
// master seed.
constexpr std::uint64_t kGenerateStream = 1;
constexpr std::uint64_t kSolveStream = 2;
constexpr std::uint64_t kOracleStream = 3;

rs::CnfFormula load_formula(const std::string& cnf, const std::string& generate, std::uint64_t seed, Json& inputs) {
  if (!cnf.empty()) {
    inputs["cnf"] = cnf;
    return rs::load_dimacs(cnf);
  }
  const auto g = parse_generate(generate);
  inputs["generate"] = {{"k", g.k}, {"vars", g.vars}, {"clauses", g.clauses}};
  return rs::generate_random_ksat(g.k, g.vars, g.clauses, rs::RngSpec{seed, kGenerateStream});
}

Json formula_json(const rs::CnfFormula& f) {
  std::size_t tautologies = 0;
  for (const bool t : f.tautological) tautologies += t ? 1 : 0;
  return Json{{"vars", f.num_vars}, {"clauses", f.clauses.size()}, {"tautological", tautologies},
              {"warnings", f.warnings}};
}

Json cets_optimum_json(const rs::SuccessCurve& curve, double c, double e_itr, rs::CiMethod method, double alpha) {
  const auto opt = rs::optimize_cets(curve, c, e_itr, method, alpha);
  const auto est = rs::confidence_interval(curve.tally_at(opt.i_star), method, alpha);
  return Json{{"i_star", opt.i_star},
              {"max_iter", curve.max_iter()},
              {"mode", rs::to_string(rs::classify_mode(opt.i_star, curve.max_iter()))},
              {"cets_opt", rs::to_json(opt.estimate)},
              {"r_c", rs::to_json(opt.estimate.repeats)},
              {"estimate", rs::to_json(est)}};
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double alpha = rs::kDefaultAlpha;
  std::string method = "ac";
  double c = 0.99;
  double e_itr = 1.0;
  std::uint64_t i = 1;
};

int run_analyze(const AnalyzeArgs& a, const Common& common) {
  check_alpha(a.alpha);
  check_c(a.c);
  require(a.trials >= 1, "--trials must be at least 1");
  require(a.successes <= a.trials, "--successes cannot exceed --trials");
  require(a.e_itr > 0.0, "--e-itr must be positive");
  require(a.i >= 1, "--i must be at least 1");
  const auto method = method_from(a.method);

  const rs::TrialTally tally(a.trials, a.successes);
  const auto est = rs::confidence_interval(tally, method, a.alpha);
  const auto rc = rs::r_c_interval(est, a.c);
  const auto ce = rs::cets(a.i, a.e_itr, est, a.c);

  auto report = make_report("analyze", common,
                            {{"successes", a.successes}, {"trials", a.trials}, {"alpha", a.alpha},
                             {"method", rs::to_string(method)}, {"c", a.c}, {"e_itr", a.e_itr}, {"i", a.i}});
  report.results = {{"estimate", rs::to_json(est)},
                    {"r_c", rs::to_json(rc)},
                    {"cets", rs::to_json(ce)},
                    {"relative_errors",
                     {{"p_relative_width", rs::encode_real(rs::relative_width(est))},
                      {"r_c", rs::encode_real(rc.rel_error)},
                      {"cets", rs::encode_real(ce.rel_error)}}},
                    {"no_success", a.successes == 0},
                    {"all_success", a.successes == a.trials}};
  emit(report, common);
  return kOk;
}

// ------------------------------------------------------------------- plan

struct PlanArgs {
  double epsilon = 0.0;
  double p_hat = -1.0;
  double target = 0.1;
  double alpha = rs::kDefaultAlpha;
  double c = 0.99;
  bool simplified = false;
  bool scaled = false;
  std::uint64_t n_cap = 1'000'000;
};

int run_plan(const std::string& which, const PlanArgs& a, const Common& common) {
  check_alpha(a.alpha);
  const double z = rs::critical_value(a.alpha);
  Json inputs{{"alpha", a.alpha}};
  Json results;

  if (which == "worst-case") {
    require(a.epsilon > 0.0 && a.epsilon < 1.0, "--epsilon must lie in (0, 1)");
    inputs["epsilon"] = a.epsilon;
    inputs["simplified"] = a.simplified;
    const auto exact = rs::worst_case_n(a.epsilon, a.alpha);
    const auto simple = rs::worst_case_n_simplified(a.epsilon);
    results = {{"n", a.simplified ? simple : exact},
               {"variant", a.simplified ? "simplified_z2" : "exact_quantile"},
               {"z", z},
               {"variants",
                {{"exact_quantile", exact},
                 {"simplified_z2", simple},
                 {"pseudo_trials_n_hat", rs::worst_case_n_hat(a.epsilon, a.alpha)}}}};
  } else if (which == "target") {
    require(a.epsilon > 0.0 && a.epsilon < 1.0, "--epsilon must lie in (0, 1)");
    require(a.p_hat >= 0.0 && a.p_hat <= 1.0, "--p-hat must lie in [0, 1]");
    inputs["epsilon"] = a.epsilon;
    inputs["p_hat"] = a.p_hat;
    const auto s = rs::n_for_target(a.p_hat, a.epsilon, a.alpha);
    results = {{"n", s.n}, {"variant", "exact_quantile"}, {"degenerate", s.degenerate}, {"z", z}};
  } else if (which == "relative") {
    require(a.p_hat > 0.0 && a.p_hat < 1.0, "--p-hat must lie in (0, 1)");
    require(a.target > 0.0, "--target must be positive");
    inputs["p_hat"] = a.p_hat;
    inputs["target"] = a.target;
    inputs["scaled"] = a.scaled;
    rs::PlanConfig cfg;
    cfg.alpha = a.alpha;
    cfg.target_rel_error = a.target;
    const auto unscaled = rs::relative_error_bound(a.p_hat, cfg);
    cfg.use_scaling = true;
    const auto scaled = rs::relative_error_bound(a.p_hat, cfg);
    results = {{"n", a.scaled ? scaled : unscaled},
               {"variant", a.scaled ? "scaled" : "unscaled"},
               {"scale", rs::scaling_function(a.p_hat)},
               {"variants", {{"unscaled", unscaled}, {"scaled", scaled}}}};
  } else {
    require(a.p_hat > 0.0 && a.p_hat < 1.0, "--p-hat must lie in (0, 1)");
    require(a.target > 0.0, "--target must be positive");
    check_c(a.c);
    require(a.n_cap >= 1, "--n-cap must be at least 1");
    inputs["p_hat"] = a.p_hat;
    inputs["target"] = a.target;
    inputs["c"] = a.c;
    inputs["n_cap"] = a.n_cap;
    const auto root = rs::exact_n_root_find(a.p_hat, a.target, a.alpha, a.c, a.n_cap);
    rs::PlanConfig cfg;
    cfg.alpha = a.alpha;
    cfg.target_rel_error = a.target;
    results = {{"n", root.n},
               {"variant", "root_find"},
               {"capped", root.capped},
               {"rel_error_at_n",
                rs::encode_real(rs::r_c_relative_error_at(a.p_hat, static_cast<double>(root.n), a.alpha, a.c))},
               {"variants", {{"unscaled", rs::relative_error_bound(a.p_hat, cfg)}}}};
  }
  auto report = make_report("plan " + which, common, std::move(inputs));
  report.results = std::move(results);
  emit(report, common);
  return kOk;
}

// --------------------------------------------------------------- adaptive

struct AdaptiveArgs {
  std::optional<double> synthetic_p;
  std::string cmd;
  int success_exit = 0;
  double timeout = 60.0;
  unsigned parallel = 1;
  std::string cnf;
  std::string generate;
  double w = 0.5;
  std::uint64_t max_flips = 5000;
  double target = 0.1;
  std::uint64_t n_init = 100;
  bool scaled = false;
  double alpha = rs::kDefaultAlpha;
  double c = 0.99;
  std::uint64_t n_cap = 1'000'000;
  std::string trace;
};

int run_adaptive(const AdaptiveArgs& a, const Common& common) {
  const int sources = (a.synthetic_p ? 1 : 0) + (a.cmd.empty() ? 0 : 1) + (a.cnf.empty() && a.generate.empty() ? 0 : 1);
  require(sources == 1, "give exactly one oracle source: --synthetic-p, --cmd, or --cnf/--generate");
  require(a.cnf.empty() || a.generate.empty(), "--cnf and --generate are mutually exclusive");
  check_c(a.c);

  rs::PlanConfig cfg;
  cfg.alpha = a.alpha;
  cfg.target_rel_error = a.target;
  cfg.n_init = a.n_init;
  cfg.use_scaling = a.scaled;
  cfg.n_cap = a.n_cap;
  try {
    cfg.validate();
  } catch (const rs::DomainError& e) {
    throw UsageError(e.what());
  }

  Json inputs{{"target", a.target}, {"n_init", a.n_init}, {"scaled", a.scaled},
              {"alpha", a.alpha},   {"c", a.c},           {"n_cap", a.n_cap}};
  Json oracle_info;
  rs::SuccessOracle oracle;
  std::optional<rs::ExternalOracle> external;
  std::optional<rs::CnfFormula> formula;
  std::optional<rs::Rng> engine;
  std::uint64_t next_repeat = 0;
  rs::WalksatConfig wcfg;

  if (a.synthetic_p) {
    const double p = *a.synthetic_p;
    require(p >= 0.0 && p <= 1.0, "--synthetic-p must lie in [0, 1]");
    inputs["synthetic_p"] = p;
    engine.emplace(rs::RngSpec{common.seed, kOracleStream}.engine());
    oracle = [&engine, p](std::uint64_t batch) { return rs::bernoulli_batch(p, batch, *engine); };
  } else if (!a.cmd.empty()) {
    require(a.timeout > 0.0, "--timeout must be positive");
    require(a.parallel >= 1, "--parallel must be at least 1");
    rs::ExternalSolverSpec spec{a.cmd, a.success_exit,
                                std::chrono::milliseconds(static_cast<std::int64_t>(std::ceil(a.timeout * 1000.0)))};
    inputs["cmd"] = a.cmd;
    inputs["success_exit"] = a.success_exit;
    inputs["timeout_s"] = a.timeout;
    inputs["parallel"] = a.parallel;
    external.emplace(spec, rs::RngSpec{common.seed, kOracleStream}, a.parallel);
    oracle = [&external](std::uint64_t batch) { return (*external)(batch); };
  } else {
    formula = load_formula(a.cnf, a.generate, common.seed, inputs);
    wcfg.w = a.w;
    wcfg.max_flips = a.max_flips;
    wcfg.seed = rs::RngSpec{common.seed, kSolveStream};
    try {
      wcfg.validate();
    } catch (const rs::DomainError& e) {
      throw UsageError(e.what());
    }
    inputs["w"] = a.w;
    inputs["max_flips"] = a.max_flips;
    oracle_info["formula"] = formula_json(*formula);
    oracle = [&](std::uint64_t batch) {
      std::vector<std::uint8_t> solved(batch, 0);
      rs::parallel_for(batch, common.workers, [&](std::size_t k) {
        auto per_repeat = wcfg;
        per_repeat.seed = wcfg.seed.child(next_repeat + k);
        solved[k] = rs::walksat_skc_run(*formula, per_repeat, next_repeat + k).record.first_success_iter ? 1 : 0;
      });
      next_repeat += batch;
      std::uint64_t total = 0;
      for (const auto s : solved) total += s;
      return total;
    };
  }

  std::ofstream trace_file;
  std::ostream* trace = &std::cerr;
  if (!a.trace.empty()) {
    trace_file = open_output(a.trace);
    trace = &trace_file;
  }
  const auto plan = rs::adaptive_repeats(oracle, cfg, [&](const rs::PlanRound& round) {
    *trace << rs::to_json(round).dump() << '\n';
    trace->flush();
  });

  const auto rc = rs::r_c_interval(plan.final_estimate, a.c);
  auto report = make_report("adaptive", common, std::move(inputs));
  report.results = {{"plan", rs::to_json(plan)},
                    {"r_c", rs::to_json(rc)},
                    {"final_n_meets_bound", plan.bound_value.has_value() && plan.final_n >= *plan.bound_value}};
  if (external) {
    oracle_info["repeats_run"] = external->repeats_run();
    oracle_info["timeouts"] = external->timeouts();
  }
  if (!oracle_info.is_null()) report.results["oracle"] = std::move(oracle_info);
  emit(report, common);
  return kOk;
}

// --------------------------------------------------------------- simulate

struct SimulateArgs {
  std::vector<std::string> pairs;
  std::vector<std::uint64_t> ns;
  std::uint64_t trials = 1000;
  double c = 0.99;
  double alpha = rs::kDefaultAlpha;
  std::string csv;
  std::string p_spec = "0.1..0.9";
  double target = 0.1;
  std::uint64_t n_init = 100;
  bool scaled = false;
  double p = 0.5;
  std::uint64_t draws = 10'000;
  std::uint64_t chunk = 100;
};

int run_simulate(const std::string& which, SimulateArgs a, const Common& common) {
  check_alpha(a.alpha);
  check_c(a.c);
  require(a.trials >= 1, "--trials must be at least 1");
  const rs::RngSpec rng{common.seed, 0};
  Json inputs{{"alpha", a.alpha}, {"c", a.c}};
  Json results;

  if (which == "compare") {
    std::vector<std::pair<double, double>> pairs;
    if (a.pairs.empty()) pairs = {{0.25, 0.2}, {0.5, 0.45}, {0.75, 0.7}, {0.99, 0.94}};
    for (const auto& s : a.pairs) {
      const auto comma = s.find(',');
      require(comma != std::string::npos, "--pair expects p1,p2");
      const double p1 = parse_double(s.substr(0, comma), "--pair");
      const double p2 = parse_double(s.substr(comma + 1), "--pair");
      require(p1 >= 0.0 && p1 <= 1.0 && p2 >= 0.0 && p2 <= 1.0, "--pair probabilities must lie in [0, 1]");
      pairs.emplace_back(p1, p2);
    }
    if (a.ns.empty()) a.ns = {100, 1000, 10000};
    for (const auto n : a.ns) require(n >= 1, "--n values must be at least 1");
    inputs["trials"] = a.trials;
    inputs["n"] = a.ns;
    inputs["pairs"] = pairs;

    std::vector<rs::ComparisonRow> rows;
    std::uint64_t cell = 0;
    for (const auto& [p1, p2] : pairs) {
      for (const auto n : a.ns) {
        rows.push_back(rs::compare_optimizers(p1, p2, n, a.trials, a.c, a.alpha, rng.child(cell++), common.workers));
      }
    }
    results["rows"] = Json::array();
    for (const auto& r : rows) results["rows"].push_back(rs::to_json(r));
    if (!a.csv.empty()) {
      auto f = open_output(a.csv);
      rs::write_comparison_csv(f, rows);
    }
  } else if (which == "relerr") {
    const auto ps = parse_p_list(a.p_spec);
    rs::PlanConfig cfg;
    cfg.alpha = a.alpha;
    cfg.target_rel_error = a.target;
    cfg.n_init = a.n_init;
    cfg.use_scaling = a.scaled;
    try {
      cfg.validate();
    } catch (const rs::DomainError& e) {
      throw UsageError(e.what());
    }
    inputs["p"] = ps;
    inputs["trials"] = a.trials;
    inputs["target"] = a.target;
    inputs["n_init"] = a.n_init;
    inputs["scaled"] = a.scaled;

    std::vector<rs::RelErrStats> runs;
    // Trial t at every p shares stream child(t), so scaled and unscaled
    // runs with the same seed are paired.
    for (const double p : ps) runs.push_back(rs::adaptive_relerr_experiment(p, cfg, a.c, a.trials, rng, common.workers));
    results["summary"] = Json::array();
    for (const auto& r : runs) {
      auto j = rs::to_json(r);
      j["fraction_within_target"] = r.fraction_within(a.target);
      results["summary"].push_back(std::move(j));
    }
    if (!a.csv.empty()) {
      auto f = open_output(a.csv);
      rs::write_relerr_csv(f, runs);
    }
  } else {
    require(a.p >= 0.0 && a.p <= 1.0, "--p must lie in [0, 1]");
    require(a.chunk >= 1 && a.draws >= a.chunk && a.draws % a.chunk == 0,
            "--draws must be a positive multiple of --chunk");
    inputs["p"] = a.p;
    inputs["draws"] = a.draws;
    inputs["chunk"] = a.chunk;
    std::vector<std::uint8_t> sample(a.draws);
    auto engine = rng.engine();
    for (auto& s : sample) s = engine.bernoulli(a.p) ? 1 : 0;
    results = rs::to_json(rs::chunked_beta_check(sample, a.chunk, a.alpha));
  }
  auto report = make_report("simulate " + which, common, std::move(inputs));
  report.results = std::move(results);
  emit(report, common);
  return kOk;
}

// ---------------------------------------------------------------- walksat

struct WalksatArgs {
  std::string cnf;
  std::string generate;
  double w = 0.5;
  std::uint64_t max_flips = 5000;
  std::uint64_t repeats = 100;
  double c = 0.99;
  double alpha = rs::kDefaultAlpha;
  double e_itr = 1.0;
  std::string method = "ac";
  std::string records;
  std::string curve;
};

int run_walksat(const WalksatArgs& a, const Common& common) {
  require(a.cnf.empty() != a.generate.empty(), "give exactly one of --cnf or --generate");
  require(a.repeats >= 1, "--repeats must be at least 1");
  check_alpha(a.alpha);
  check_c(a.c);
  require(a.e_itr > 0.0, "--e-itr must be positive");
  const auto method = method_from(a.method);

  Json inputs{{"w", a.w},         {"max_flips", a.max_flips}, {"repeats", a.repeats}, {"c", a.c},
              {"alpha", a.alpha}, {"e_itr", a.e_itr},         {"method", rs::to_string(method)}};
  const auto formula = load_formula(a.cnf, a.generate, common.seed, inputs);
  rs::WalksatConfig cfg{a.w, a.max_flips, rs::RngSpec{common.seed, kSolveStream}};
  try {
    cfg.validate();
  } catch (const rs::DomainError& e) {
    throw UsageError(e.what());
  }

  const auto runs = rs::run_experiment(formula, cfg, a.repeats, common.workers);
  const auto records = rs::records_of(runs);
  bool witnesses_ok = true;
  for (const auto& run : runs) {
    if (run.record.first_success_iter && rs::count_unsat(formula, run.final_assignment) != 0) witnesses_ok = false;
  }
  const auto curve = rs::success_curve(records, a.max_flips);
  const auto est = rs::confidence_interval(curve.tally_at(a.max_flips), method, a.alpha);

  auto report = make_report("walksat", common, std::move(inputs));
  report.results = {{"formula", formula_json(formula)},
                    {"estimate", rs::to_json(est)},
                    {"r_c", rs::to_json(rs::r_c_interval(est, a.c))},
                    {"witnesses_verified", witnesses_ok}};
  if (est.tally.successes() > 0) {
    report.results["cets"] = cets_optimum_json(curve, a.c, a.e_itr, method, a.alpha);
  } else {
    report.results["cets"] = nullptr;
  }
  if (!a.records.empty()) {
    auto f = open_output(a.records);
    rs::write_records_csv(f, records);
  }
  if (!a.curve.empty()) {
    auto f = open_output(a.curve);
    rs::write_curve_csv(f, curve);
  }
  emit(report, common);
  return kOk;
}

// ------------------------------------------------------------------- cets

struct CetsArgs {
  std::string curve;
  std::string records;
  std::uint64_t max_iter = 0;
  double c = 0.99;
  double e_itr = 1.0;
  double alpha = rs::kDefaultAlpha;
  std::string method = "ac";
};

int run_cets(const CetsArgs& a, const Common& common) {
  require(a.curve.empty() != a.records.empty(), "give exactly one of --curve or --records");
  require(a.records.empty() || a.max_iter >= 1, "--records needs --max-iter");
  check_alpha(a.alpha);
  check_c(a.c);
  require(a.e_itr > 0.0, "--e-itr must be positive");
  const auto method = method_from(a.method);

  Json inputs{{"c", a.c}, {"e_itr", a.e_itr}, {"alpha", a.alpha}, {"method", rs::to_string(method)}};
  std::optional<rs::SuccessCurve> curve;
  if (!a.curve.empty()) {
    inputs["curve"] = a.curve;
    auto f = open_input(a.curve);
    curve = rs::read_curve_csv(f);
  } else {
    inputs["records"] = a.records;
    inputs["max_iter"] = a.max_iter;
    auto f = open_input(a.records);
    const auto records = rs::read_records_csv(f);
    if (records.empty()) throw DataError("no run records in " + a.records);
    curve = rs::success_curve(records, a.max_iter);
  }
  if (curve->max_iter() == 0) throw DataError("empty success curve");
  if (curve->counts().back() == 0) throw DataError("no success observed");

  auto report = make_report("cets", common, std::move(inputs));
  report.results = cets_optimum_json(*curve, a.c, a.e_itr, method, a.alpha);
  emit(report, common);
  return kOk;
}

std::uint64_t seed_from_env() {
  const char* env = std::getenv("REPEATSTAT_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used, 0);
    if (used == std::string(env).size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string("REPEATSTAT_SEED is not an unsigned integer: ") + env);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Repeat-count statistics for stochastic optimizers"};
  app.set_version_flag("--version", std::string(REPEATSTAT_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  std::optional<std::uint64_t> seed_flag;
  app.add_option("--seed", seed_flag, "Master seed (default: $REPEATSTAT_SEED, else 0)");
  app.add_option("--workers", common.workers, "Worker threads, 0 = all cores");
  app.add_option("--out", common.out, "Write the JSON report here instead of stdout");

  std::function<int()> action;

  // analyze
  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Interval, R_c and CETS for one success tally");
  analyze->add_option("--successes", an.successes)->required();
  analyze->add_option("--trials", an.trials)->required();
  analyze->add_option("--alpha", an.alpha);
  analyze->add_option("--method", an.method, "wald | wilson | ac | jeffreys");
  analyze->add_option("--c", an.c, "Target confidence for R_c");
  analyze->add_option("--e-itr", an.e_itr, "Cost per iteration");
  analyze->add_option("--i", an.i, "Iteration budget");
  analyze->callback([&] { action = [&] { return run_analyze(an, common); }; });

  // plan
  PlanArgs pl;
  auto* plan = app.add_subcommand("plan", "Sample-size formulas");
  plan->require_subcommand(1);
  for (const char* name : {"worst-case", "target", "relative", "exact"}) {
    auto* sub = plan->add_subcommand(name);
    sub->add_option("--alpha", pl.alpha);
    const std::string which = name;
    if (which == "worst-case" || which == "target") sub->add_option("--epsilon", pl.epsilon)->required();
    if (which == "worst-case") sub->add_flag("--simplified", pl.simplified, "Use the z = 2 shorthand");
    if (which != "worst-case") sub->add_option("--p-hat", pl.p_hat)->required();
    if (which == "relative" || which == "exact") sub->add_option("--target", pl.target, "Target relative error e_T");
    if (which == "relative") sub->add_flag("--scaled", pl.scaled, "Apply the scaling function");
    if (which == "exact") {
      sub->add_option("--c", pl.c);
      sub->add_option("--n-cap", pl.n_cap);
    }
    sub->callback([&, which] { action = [&, which] { return run_plan(which, pl, common); }; });
  }

  // adaptive
  AdaptiveArgs ad;
  auto* adaptive = app.add_subcommand("adaptive", "Adaptive repeat controller");
  adaptive->add_option("--synthetic-p", ad.synthetic_p, "Bernoulli oracle with this success probability");
  adaptive->add_option("--cmd", ad.cmd, "External solver command; {seed} and {repeat} are substituted");
  adaptive->add_option("--success-exit", ad.success_exit, "Exit code that counts as success");
  adaptive->add_option("--timeout", ad.timeout, "Seconds per external invocation");
  adaptive->add_option("--parallel", ad.parallel, "Concurrent external invocations");
  adaptive->add_option("--cnf", ad.cnf, "DIMACS file solved by WalkSAT");
  adaptive->add_option("--generate", ad.generate, "Random k-SAT, e.g. k=4,vars=50,clauses=499");
  adaptive->add_option("--w", ad.w);
  adaptive->add_option("--max-flips", ad.max_flips);
  adaptive->add_option("--target", ad.target, "Target relative error e_T");
  adaptive->add_option("--n-init", ad.n_init);
  adaptive->add_flag("--scaled", ad.scaled);
  adaptive->add_option("--alpha", ad.alpha);
  adaptive->add_option("--c", ad.c);
  adaptive->add_option("--n-cap", ad.n_cap);
  adaptive->add_option("--trace", ad.trace, "JSON-lines trace file (default stderr)");
  adaptive->callback([&] { action = [&] { return run_adaptive(ad, common); }; });

  // simulate
  SimulateArgs sm;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo studies");
  simulate->require_subcommand(1);
  for (const char* name : {"compare", "relerr", "chunked"}) {
    auto* sub = simulate->add_subcommand(name);
    const std::string which = name;
    sub->add_option("--alpha", sm.alpha);
    if (which != "chunked") {
      sub->add_option("--trials", sm.trials);
      sub->add_option("--c", sm.c);
      sub->add_option("--csv", sm.csv);
    }
    if (which == "compare") {
      sub->add_option("--pair", sm.pairs, "p1,p2 (repeatable)")->allow_extra_args(false);
      sub->add_option("--n", sm.ns, "Repeats per optimizer")->delimiter(',');
    } else if (which == "relerr") {
      sub->add_option("--p", sm.p_spec, "lo..hi[:step] or a comma list");
      sub->add_option("--target", sm.target);
      sub->add_option("--n-init", sm.n_init);
      sub->add_flag("--scaled", sm.scaled);
    } else {
      sub->add_option("--p", sm.p);
      sub->add_option("--draws", sm.draws);
      sub->add_option("--chunk", sm.chunk);
    }
    sub->callback([&, which] { action = [&, which] { return run_simulate(which, sm, common); }; });
  }

  // walksat
  WalksatArgs ws;
  auto* walksat = app.add_subcommand("walksat", "Run WalkSAT-SKC repeats on a formula");
  walksat->add_option("--cnf", ws.cnf);
  walksat->add_option("--generate", ws.generate, "k=4,vars=50,clauses=499");
  walksat->add_option("--w", ws.w);
  walksat->add_option("--max-flips", ws.max_flips);
  walksat->add_option("--repeats", ws.repeats);
  walksat->add_option("--c", ws.c);
  walksat->add_option("--alpha", ws.alpha);
  walksat->add_option("--e-itr", ws.e_itr);
  walksat->add_option("--method", ws.method);
  walksat->add_option("--records", ws.records, "Run-record CSV output");
  walksat->add_option("--curve", ws.curve, "Success-curve CSV output");
  walksat->callback([&] { action = [&] { return run_walksat(ws, common); }; });

  // cets
  CetsArgs ct;
  auto* cets = app.add_subcommand("cets", "Optimize CETS over iteration budgets");
  cets->add_option("--curve", ct.curve);
  cets->add_option("--records", ct.records);
  cets->add_option("--max-iter", ct.max_iter);
  cets->add_option("--c", ct.c);
  cets->add_option("--e-itr", ct.e_itr);
  cets->add_option("--alpha", ct.alpha);
  cets->add_option("--method", ct.method);
  cets->callback([&] { action = [&] { return run_cets(ct, common); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    common.seed = seed_flag ? *seed_flag : seed_from_env();
    return action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const rs::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kData;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const rs::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const rs::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
}
