#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynsink/generator.hpp"
#include "dynsink/network.hpp"
#include "dynsink/placement.hpp"

namespace dynsink::cli {

enum ExitCode : int { kOk = 0, kUserError = 1, kInternalError = 2 };

struct SolveRequest {
  Objective objective = Objective::kMinimax;
  int k = 1;
  std::string input;
  std::string output;  // empty or "-" for stdout
  std::optional<double> tolerance;
  bool emit_counters = false;
};

/// Solves, certifies the placement by re-evaluation and returns the result
/// document. Throws ValidationError / std::invalid_argument on bad input and
/// InvariantViolation when the certificate disagrees with the solver.
nlohmann::json cmd_solve(const DynamicPathNetwork& net, const SolveRequest& req, const Tolerance& tol);

/// Result document <-> placement.
nlohmann::json result_document(const DynamicPathNetwork& net, const Placement& placement, int requested_k);
Placement placement_from_result(const nlohmann::json& doc);

struct CheckOptions {
  int trials = 100;
  int max_n = 10;
  int max_k = 4;
  std::uint64_t seed = 1;
  double perturb = 0.0;  // added to every solver cost before comparison
  bool failures_only = false;
};

struct CheckSummary {
  int trials = 0;
  int reports = 0;
  int failures = 0;
  int budget_skipped = 0;
  bool pass() const { return failures == 0; }
};

/// Random solver-vs-oracle and property trials; one report per JSON line.
CheckSummary cmd_check(const CheckOptions& opts, const Tolerance& tol, std::ostream& reports);

nlohmann::json cmd_gen(int n, std::uint64_t seed, const GenRanges& ranges);

struct BenchOptions {
  std::vector<int> sizes{1000, 10000, 100000};
  std::vector<int> ks{5};
  Objective objective = Objective::kMinimax;
  std::uint64_t seed = 1;
};

/// One JSON row per (n, k) with wall time and operation counters.
std::vector<nlohmann::json> cmd_bench(const BenchOptions& opts);

/// Reads DYNSINK_TOLERANCE, if set, into the relative tolerance.
Tolerance tolerance_from_env();

/// Full command-line entry point.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace dynsink::cli
