#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "dynsink/instance_io.hpp"
#include "dynsink/minimax.hpp"
#include "dynsink/minisum.hpp"
#include "dynsink/oracle.hpp"

namespace dynsink::cli {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

double evaluate(const DynamicPathNetwork& net, const Placement& p, const Tolerance& tol) {
  return p.objective == Objective::kMinimax ? evaluate_minimax(net, p, tol) : evaluate_minisum(net, p, tol);
}

}  // namespace

Tolerance tolerance_from_env() {
  Tolerance tol;
  const char* text = std::getenv("DYNSINK_TOLERANCE");
  if (text == nullptr || *text == '\0') return tol;
  char* end = nullptr;
  const double value = std::strtod(text, &end);
  if (end == text || *end != '\0' || !(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string("DYNSINK_TOLERANCE: expected a positive number, got \"") + text + "\"");
  }
  tol.rel = value;
  return tol;
}

// ---------------------------------------------------------------------------

nlohmann::json result_document(const DynamicPathNetwork& net, const Placement& placement, int requested_k) {
  nlohmann::json groups = nlohmann::json::array();
  for (const GroupRecord& g : placement.groups) {
    groups.push_back({{"from", g.first}, {"to", g.last}, {"sink", g.sink}, {"group_cost", g.cost}});
  }
  return {{"digest", instance_digest(net)},
          {"objective", std::string(to_string(placement.objective))},
          {"k", requested_k},
          {"cost", placement.cost},
          {"sinks", placement.sinks},
          {"dividers", placement.dividers},
          {"groups", groups}};
}

Placement placement_from_result(const nlohmann::json& doc) {
  Placement p;
  const auto objective = parse_objective(doc.at("objective").get<std::string>());
  if (!objective) throw std::invalid_argument("result document: unknown objective");
  p.objective = *objective;
  p.k = doc.at("k").get<int>();
  p.cost = doc.at("cost").get<double>();
  p.sinks = doc.at("sinks").get<std::vector<double>>();
  p.dividers = doc.at("dividers").get<std::vector<int>>();
  for (const auto& g : doc.at("groups")) {
    p.groups.push_back({g.at("from").get<int>(), g.at("to").get<int>(), g.at("sink").get<double>(),
                        g.at("group_cost").get<double>()});
  }
  return p;
}

nlohmann::json cmd_solve(const DynamicPathNetwork& net, const SolveRequest& req, const Tolerance& tol) {
  if (req.k < 1) throw std::invalid_argument("k must be at least 1, got " + std::to_string(req.k));
  const auto start = std::chrono::steady_clock::now();
  Placement placement;
  nlohmann::json counters;
  if (req.objective == Objective::kMinimax) {
    MinimaxCounters mc;
    placement = minimax_k_sink(net, req.k, &mc);
    counters = {{"cells_tested", mc.cells_tested()},
                {"merge_tests", mc.merge_tests()},
                {"divider_steps", mc.divider_steps()},
                {"weight_queries", 0}};
  } else {
    MinisumCounters sc;
    placement = minisum_k_sink(net, req.k, &sc);
    counters = {{"cells_tested", 0},
                {"merge_tests", sc.sweep_tests},
                {"divider_steps", 0},
                {"weight_queries", sc.weight_queries}};
  }
  const double wall = elapsed_ms(start);

  const double certified = evaluate(net, placement, tol);
  if (!tol.equal(certified, placement.cost)) {
    throw InvariantViolation("certificate mismatch: solver cost " + std::to_string(placement.cost) +
                             ", re-evaluated " + std::to_string(certified));
  }
  nlohmann::json doc = result_document(net, placement, req.k);
  if (req.emit_counters) doc["counters"] = counters;
  doc["wall_time_ms"] = wall;
  return doc;
}

// ---------------------------------------------------------------------------

namespace {

struct CheckContext {
  const CheckOptions& opts;
  const Tolerance& tol;
  std::ostream& out;
  CheckSummary& summary;

  void emit(const oracle::OracleReport& r) {
    ++summary.reports;
    if (!r.pass) ++summary.failures;
    if (!r.pass || !opts.failures_only) out << oracle::to_json(r).dump() << '\n';
  }
};

std::size_t divider_regressions(const MinimaxTable& table, int n) {
  std::size_t bad = 0;
  for (int p = 2; p <= table.k; ++p) {
    for (int i = 2; i <= n; ++i) {
      if (table.divider[p][i] < table.divider[p][i - 1]) ++bad;
    }
  }
  return bad;
}

void check_trial(CheckContext& ctx, std::uint64_t trial_seed) {
  std::mt19937_64 rng(trial_seed);
  const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(ctx.opts.max_n));
  const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(ctx.opts.max_k));
  GenRanges ranges;
  ranges.integral = rng() % 4 == 0;
  const DynamicPathNetwork net = validate_network(generate_instance(n, rng, ranges));
  const std::string digest = instance_digest(net);
  const double bump = ctx.opts.perturb;

  const Placement mm = minimax_k_sink(net, k);
  const Placement ms = minisum_k_sink(net, k);
  try {
    const Placement mm_ref = oracle::oracle_minimax_k(net, k);
    ctx.emit(oracle::make_report(digest, "minimax_k", {mm.cost + bump}, {mm_ref.cost}, trial_seed, ctx.tol));
    const Placement ms_ref = oracle::oracle_minisum_k(net, k);
    ctx.emit(oracle::make_report(digest, "minisum_k", {ms.cost + bump}, {ms_ref.cost}, trial_seed, ctx.tol));
  } catch (const oracle::BudgetExceeded&) {
    ++ctx.summary.budget_skipped;
  }
  ctx.emit(oracle::make_report(digest, "evaluate_minimax", {mm.cost + bump}, {evaluate_minimax(net, mm, ctx.tol)},
                               trial_seed, ctx.tol));
  ctx.emit(oracle::make_report(digest, "evaluate_minisum", {ms.cost + bump}, {evaluate_minisum(net, ms, ctx.tol)},
                               trial_seed, ctx.tol));
  if (k < n) {
    const MinimaxTable table = minimax_table(net, k);
    ctx.emit(oracle::make_report(digest, "divider_monotonicity",
                                 {static_cast<double>(divider_regressions(table, n))}, {0.0}, trial_seed, ctx.tol));
  }
  ctx.emit(oracle::make_report(digest, "concave_monge", {static_cast<double>(oracle::check_monge(net).size())},
                               {0.0}, trial_seed, ctx.tol));
}

}  // namespace

CheckSummary cmd_check(const CheckOptions& opts, const Tolerance& tol, std::ostream& reports) {
  if (opts.trials < 0 || opts.max_n < 1 || opts.max_k < 1) {
    throw std::invalid_argument("check: trials must be >= 0 and max-n, max-k >= 1");
  }
  CheckSummary summary;
  CheckContext ctx{opts, tol, reports, summary};
  std::mt19937_64 seeds(opts.seed);
  for (int t = 0; t < opts.trials; ++t) {
    check_trial(ctx, seeds());
    ++summary.trials;
  }
  return summary;
}

nlohmann::json cmd_gen(int n, std::uint64_t seed, const GenRanges& ranges) {
  return raw_instance_to_json(generate_instance(n, seed, ranges));
}

std::vector<nlohmann::json> cmd_bench(const BenchOptions& opts) {
  std::vector<nlohmann::json> rows;
  for (int n : opts.sizes) {
    const DynamicPathNetwork net = validate_network(generate_instance(n, opts.seed));
    for (int k : opts.ks) {
      nlohmann::json row{{"n", n}, {"k", k}, {"objective", std::string(to_string(opts.objective))}};
      const auto start = std::chrono::steady_clock::now();
      if (opts.objective == Objective::kMinimax) {
        MinimaxCounters mc;
        const Placement p = minimax_k_sink(net, k, &mc);
        row["wall_ms"] = elapsed_ms(start);
        row["cost"] = p.cost;
        row["cells_tested"] = mc.cells_tested();
        row["divider_steps"] = mc.divider_steps();
        row["merge_tests"] = mc.merge_tests();
        row["total"] = mc.total();
        row["total_per_n"] = static_cast<double>(mc.total()) / n;
      } else {
        MinisumCounters sc;
        const Placement p = minisum_k_sink(net, k, &sc);
        row["wall_ms"] = elapsed_ms(start);
        row["cost"] = p.cost;
        row["weight_queries"] = sc.weight_queries;
        row["weight_lookups"] = sc.weight_lookups;
        row["merge_tests"] = sc.sweep_tests;
        std::uint64_t worst_layer = 0;
        for (auto v : sc.layer_lookups) worst_layer = std::max(worst_layer, v);
        const double nlogn = n > 1 ? n * std::log2(static_cast<double>(n)) : 1.0;
        row["max_layer_lookups"] = worst_layer;
        row["max_layer_lookups_per_nlogn"] = static_cast<double>(worst_layer) / nlogn;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------

namespace {

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text << '\n';
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open output file " + path);
  file << text << '\n';
}

Objective objective_arg(const std::string& text) {
  const auto o = parse_objective(text);
  if (!o) throw std::invalid_argument("objective must be minimax or minisum, got \"" + text + "\"");
  return *o;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sink location on dynamic path networks"};
  app.require_subcommand(1);

  SolveRequest solve;
  std::string solve_objective;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a k-sink instance");
  solve_cmd->add_option("--objective", solve_objective, "minimax or minisum")->required();
  solve_cmd->add_option("-k", solve.k, "Number of sinks")->required();
  solve_cmd->add_option("-i,--input", solve.input, "Instance JSON file")->required();
  solve_cmd->add_option("-o,--output", solve.output, "Result file (default stdout)");
  solve_cmd->add_option("--tolerance", solve.tolerance, "Relative tolerance override");
  solve_cmd->add_flag("--counters", solve.emit_counters, "Include operation counters");

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Fuzz the solvers against the oracles");
  check_cmd->add_option("--trials", check.trials);
  check_cmd->add_option("--max-n", check.max_n);
  check_cmd->add_option("--max-k", check.max_k);
  check_cmd->add_option("--seed", check.seed);
  check_cmd->add_option("--perturb", check.perturb, "Add this to every solver cost (negative control)");
  check_cmd->add_flag("--failures-only", check.failures_only, "Print only failing reports");

  int gen_n = 0;
  std::uint64_t gen_seed = 1;
  std::string gen_output;
  GenRanges ranges;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--n", gen_n)->required();
  gen_cmd->add_option("--seed", gen_seed);
  gen_cmd->add_option("--edge-min", ranges.edge_min);
  gen_cmd->add_option("--edge-max", ranges.edge_max);
  gen_cmd->add_option("--weight-min", ranges.weight_min);
  gen_cmd->add_option("--weight-max", ranges.weight_max);
  gen_cmd->add_option("--param-min", ranges.param_min, "Lower bound for capacity and tau");
  gen_cmd->add_option("--param-max", ranges.param_max, "Upper bound for capacity and tau");
  gen_cmd->add_flag("--integral", ranges.integral, "Small integer values");
  gen_cmd->add_option("-o,--output", gen_output);

  BenchOptions bench;
  std::string bench_objective = "minimax";
  auto* bench_cmd = app.add_subcommand("bench", "Operation counters versus instance size");
  bench_cmd->add_option("--sizes", bench.sizes)->delimiter(',');
  bench_cmd->add_option("-k,--k", bench.ks)->delimiter(',');
  bench_cmd->add_option("--objective", bench_objective);
  bench_cmd->add_option("--seed", bench.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUserError;
  }

  try {
    Tolerance tol = tolerance_from_env();
    if (*solve_cmd) {
      solve.objective = objective_arg(solve_objective);
      if (solve.tolerance) {
        if (!(*solve.tolerance > 0.0)) throw std::invalid_argument("--tolerance must be positive");
        tol.rel = *solve.tolerance;
      }
      if (solve.k < 1) throw std::invalid_argument("k must be at least 1, got " + std::to_string(solve.k));
      const DynamicPathNetwork net = load_instance(solve.input);
      write_text(solve.output, cmd_solve(net, solve, tol).dump(), out);
    } else if (*check_cmd) {
      const CheckSummary s = cmd_check(check, tol, out);
      out << nlohmann::json{{"summary",
                             {{"trials", s.trials},
                              {"reports", s.reports},
                              {"failures", s.failures},
                              {"budget_skipped", s.budget_skipped},
                              {"pass", s.pass()}}}}
                 .dump()
          << '\n';
      return s.pass() ? kOk : kInternalError;
    } else if (*gen_cmd) {
      write_text(gen_output, cmd_gen(gen_n, gen_seed, ranges).dump(), out);
    } else if (*bench_cmd) {
      bench.objective = objective_arg(bench_objective);
      for (int n : bench.sizes) {
        if (n < 1) throw std::invalid_argument("bench sizes must be positive");
      }
      for (int k : bench.ks) {
        if (k < 1) throw std::invalid_argument("bench k values must be positive");
      }
      for (const auto& row : cmd_bench(bench)) out << row.dump() << '\n';
    }
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const ValidationError& e) {
    err << "invalid instance: " << e.what() << '\n';
    return kUserError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUserError;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kUserError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kOk;
}

}  // namespace dynsink::cli
