#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynsink/network.hpp"
#include "dynsink/placement.hpp"

// Brute-force reference implementations. Nothing here calls into the cluster
// structures, the scanners or the sweeps.
namespace dynsink::oracle {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// L(alpha, beta) by a direct scan over every source vertex.
double oracle_L(const DynamicPathNetwork& net, int alpha, int beta);
/// R(beta, gamma) by a direct scan.
double oracle_R(const DynamicPathNetwork& net, int beta, int gamma);

/// Latest arrival at x of the supply of vertices in [i, j] lying left of x,
/// respectively right of x.
double left_time_at(const DynamicPathNetwork& net, int i, int j, double x);
double right_time_at(const DynamicPathNetwork& net, int i, int j, double x);
/// max(left_time_at, right_time_at).
double minimax_cost_at(const DynamicPathNetwork& net, int i, int j, double x);

struct SinkValue {
  double sink = 0.0;
  double cost = 0.0;
};

/// Minimax 1-sink optimum on [i, j] over the candidate set {vertices} plus
/// every in-cell intersection of a left term with a right term.
SinkValue oracle_minimax_1sink(const DynamicPathNetwork& net, int i, int j);

/// Exact total arrival time at x of the supply of [i, j], computed by
/// propagating busy intervals vertex by vertex.
double fluid_group_sum(const DynamicPathNetwork& net, int i, int j, double x);

struct VertexValue {
  int vertex = 1;
  double cost = 0.0;
};

/// Minisum 1-sink optimum on [i, j] over all vertices (ties to the smallest).
VertexValue oracle_minisum_1sink(const DynamicPathNetwork& net, int i, int j);

/// Number of (k-1)-dividers of n vertices, saturating at UINT64_MAX.
std::uint64_t divider_count(int n, int k);

/// Exhaustive search over every (k-1)-divider. Throws BudgetExceeded when
/// there are more than `budget` dividers.
Placement oracle_minimax_k(const DynamicPathNetwork& net, int k, std::uint64_t budget = kDefaultBudget);
Placement oracle_minisum_k(const DynamicPathNetwork& net, int k, std::uint64_t budget = kDefaultBudget);

/// Parcel simulation: each vertex of [i, j] releases `parcels` equal parcels,
/// each leaving a vertex only after the previous one has fully entered the
/// edge (rate c). Returns the sum of parcel size times arrival time at x.
double simulate_group_sum(const DynamicPathNetwork& net, int i, int j, double x, int parcels);

struct MongeViolation {
  int i;
  int j;
  double lhs;  // OPT(i,j) + OPT(i+1,j+1)
  double rhs;  // OPT(i+1,j) + OPT(i,j+1)
};

/// Quadrangle inequality over all 1 <= i, i+1 < j, j <= n, with OPT(i, j) the
/// oracle minisum 1-sink cost of [i, j-1].
std::vector<MongeViolation> check_monge(const DynamicPathNetwork& net, double abs_tol = 1e-9);

struct OracleReport {
  std::string digest;
  std::string operation;
  std::vector<double> solver;
  std::vector<double> oracle;
  double max_abs_dev = 0.0;
  double max_rel_dev = 0.0;
  bool pass = true;
  std::uint64_t seed = 0;
  std::string note;
};

/// Compares value lists element-wise; lists of different length never pass.
OracleReport make_report(std::string digest, std::string operation, std::vector<double> solver,
                         std::vector<double> oracle, std::uint64_t seed, const Tolerance& tol = {});

nlohmann::json to_json(const OracleReport& report);

}  // namespace dynsink::oracle
