#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dynsink/network.hpp"
#include "dynsink/placement.hpp"

namespace dynsink {

/// Total arrival time of `mass` units of supply leaving one point as a single
/// stream of rate c and travelling `distance`: mass*tau*distance + mass^2/(2c).
double group_arrival_cost(const DynamicPathNetwork& net, double mass, double distance);

enum class SweepDirection {
  kRightward,  // supplies move right; the sweep absorbs vertices in ascending order
  kLeftward,   // supplies move left; descending order
};

/// Running state of a minisum sweep: the supplies of the vertices absorbed so
/// far, grouped into clusters travelling toward the next vertex.
struct SumSweepState {
  struct Cluster {
    int head;
    double mass;
  };

  SweepDirection direction = SweepDirection::kRightward;
  std::vector<Cluster> clusters;  // nearest cluster to the sweep front at the back
  int last = 0;                   // last absorbed vertex, 0 before the first
  double running_sum = 0.0;       // total arrival time measured at v[last]
  double running_weight = 0.0;    // sum of cluster masses
  double prefix_weight = 0.0;     // supply of the absorbed vertices, from PrefixWeights
  std::uint64_t test_counter = 0;
};

class SumSweep {
 public:
  /// Nothing absorbed yet; the first absorb() takes vertex `start`.
  SumSweep(const DynamicPathNetwork& net, SweepDirection direction, int start);

  /// Vertex the next absorb() takes.
  int next_vertex() const { return next_; }
  bool can_absorb() const { return next_ >= 1 && next_ <= net_->size(); }
  void absorb();

  /// Total arrival time of all absorbed supply at coordinate x, which must lie
  /// at or beyond the last absorbed vertex in the sweep direction.
  double sum_at(double x) const;

  const SumSweepState& state() const { return state_; }
  std::uint64_t test_counter() const { return state_.test_counter; }

  void check_invariants(const Tolerance& tol = {}) const;

 private:
  double gap(int from, int to) const;

  const DynamicPathNetwork* net_;
  int start_;
  int next_;
  SumSweepState state_;
};

struct SweepResult {
  std::vector<double> sums;  // sums[j - start]
  std::uint64_t tests = 0;
};

/// sum_L(v_j) for j = start..end: supplies of [start, j-1] moving right to v_j.
SweepResult sweep_sum_left(const DynamicPathNetwork& net, int start, int end);
/// sum_R(v_j) for j = start..end: supplies of [j+1, end] moving left to v_j.
SweepResult sweep_sum_right(const DynamicPathNetwork& net, int start, int end);

struct MinisumOneSink {
  int vertex = 1;
  double cost = 0.0;
  std::uint64_t left_tests = 0;   // merge tests of the rightward sweep
  std::uint64_t right_tests = 0;  // and of the leftward one
};

/// Best vertex sink for the group [i, j]; ties go to the smallest index.
MinisumOneSink one_sink_minisum(const DynamicPathNetwork& net, int i, int j);

/// Memoized OPT(i, j) = one_sink_minisum(i, j-1) for DAG nodes 1 <= i < j <= n+1.
class MongeWeightOracle {
 public:
  explicit MongeWeightOracle(const DynamicPathNetwork& net);

  double weight(int i, int j);

  std::uint64_t query_counter() const { return queries_; }
  std::uint64_t lookups() const { return lookups_; }
  std::uint64_t sweep_tests() const { return sweep_tests_; }

 private:
  const DynamicPathNetwork* net_;
  std::unordered_map<std::uint64_t, double> memo_;
  std::uint64_t queries_ = 0;
  std::uint64_t lookups_ = 0;
  std::uint64_t sweep_tests_ = 0;
};

double monge_edge_weight(MongeWeightOracle& oracle, int i, int j);

struct MinisumCounters {
  std::uint64_t weight_queries = 0;  // distinct OPT(i, j) evaluations
  std::uint64_t weight_lookups = 0;  // including memo hits
  std::uint64_t sweep_tests = 0;
  std::vector<std::uint64_t> layer_lookups;  // per DP layer
};

/// Optimal minisum k-sink placement (sinks on vertices). With k >= n every
/// vertex gets a sink.
Placement minisum_k_sink(const DynamicPathNetwork& net, int k, MinisumCounters* counters = nullptr);

/// Recomputes the total evacuation time of `placement` with fresh sweeps per
/// group. Sinks may sit anywhere inside their groups.
double evaluate_minisum(const DynamicPathNetwork& net, const Placement& placement, const Tolerance& tol = {});

/// Total arrival time of group [first, last] at an arbitrary sink x in
/// [v_first, v_last].
double minisum_group_cost(const DynamicPathNetwork& net, int first, int last, double x);

}  // namespace dynsink
