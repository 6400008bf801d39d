#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dynsink/cluster_structures.hpp"
#include "dynsink/network.hpp"
#include "dynsink/placement.hpp"

namespace dynsink {

struct CellSolution {
  double sink = 0.0;
  double cost = 0.0;
};

/// Optimal sink inside the edge cell [v_l, v_{l+1}] given the four boundary
/// evacuation times of an enclosing interval [i, j]:
///   left_at_l = L(i, l), right_at_l = R(l, j),
///   left_at_next = L(i, l+1), right_at_next = R(l+1, j).
/// Returns nullopt unless left_at_l <= right_at_l and left_at_next >=
/// right_at_next, i.e. unless the optimum is known to lie in this cell.
std::optional<CellSolution> locate_in_cell(const DynamicPathNetwork& net, int l, double left_at_l,
                                           double right_at_l, double left_at_next, double right_at_next);

/// Balance point on [v_l, v_{l+1}] of the falling line R(l, j) - tau*(x - v_l)
/// and the rising line L(i, l+1) - tau*(v_{l+1} - x), clamped to the cell.
CellSolution balance_in_cell(const DynamicPathNetwork& net, int l, double right_at_l, double left_at_next);

struct OneSinkResult {
  int first = 1;
  int last = 1;
  double sink = 0.0;
  double cost = 0.0;
  int cell = 1;  // sink lies in [v_cell, v_{cell+1}] (cell == last only if first == last)
};

/// One cell-boundary test made by the scanner, exposed for tracing.
struct CellProbe {
  int origin;
  int end;
  int cell;
  double left_at_next;   // L(origin, cell+1)
  double right_at_next;  // R(cell+1, end)
  bool found;            // left_at_next >= right_at_next
};

/// Minimax 1-sink solver for an interval [origin, end] whose endpoints only
/// move rightward. Keeps D_L(origin, l), D_L(origin, l+1), D_R(l, end) and
/// D_R(l+1, end) for the current cell l and resumes the cell scan from l on
/// every call, which is valid because the optimal sink never moves left when
/// either endpoint advances.
class OneSinkScanner {
 public:
  /// Scanner for the single-vertex interval [origin, origin].
  OneSinkScanner(const DynamicPathNetwork& net, int origin);

  int origin() const { return origin_; }
  int end() const { return end_; }
  int cell() const { return cell_; }

  /// end -> end+1. Requires end < n.
  void advance_end();
  /// origin -> origin+1. Requires origin < end.
  void advance_origin();

  /// Optimal sink and cost for the current interval.
  OneSinkResult solve();

  std::uint64_t cells_tested() const { return cells_tested_; }
  /// Counters of all live and retired cluster structures.
  StructureCounters structure_counters() const;

  void set_trace(std::function<void(const CellProbe&)> trace) { trace_ = std::move(trace); }

 private:
  void move_cell();

  const DynamicPathNetwork* net_;
  int origin_;
  int end_;
  int cell_;
  LeftClusterStructure left_here_;                  // D_L(origin, cell)
  std::optional<LeftClusterStructure> left_next_;   // D_L(origin, cell+1)
  RightClusterStructure right_here_;                // D_R(cell, end)
  std::optional<RightClusterStructure> right_next_; // D_R(cell+1, end)
  StructureCounters retired_;
  std::uint64_t cells_tested_ = 0;
  std::function<void(const CellProbe&)> trace_;
};

/// Minimax 1-sink optimum on [i, j] (fresh scanner).
OneSinkResult one_sink_interval(const DynamicPathNetwork& net, int i, int j);

struct MinimaxRowCounters {
  int p = 0;
  std::uint64_t cells_tested = 0;
  std::uint64_t divider_steps = 0;
  StructureCounters structures;

  std::uint64_t total() const { return cells_tested + divider_steps + structures.tests; }
};

struct MinimaxCounters {
  std::vector<MinimaxRowCounters> rows;

  std::uint64_t cells_tested() const;
  std::uint64_t divider_steps() const;
  std::uint64_t merge_tests() const;
  std::uint64_t total() const;
};

/// Full DP table: opt[p][i] = OPT(p, 1, i), divider[p][i] = d_{p,i} (the last
/// vertex served by the first p-1 sinks), and the sink / cost of the last
/// group in that optimum. Rows are 1..k, columns 1..n (index 0 unused).
struct MinimaxTable {
  int k = 0;
  std::vector<std::vector<double>> opt;
  std::vector<std::vector<int>> divider;
  std::vector<std::vector<double>> last_sink;
  std::vector<std::vector<double>> last_cost;
  MinimaxCounters counters;
};

/// Requires 1 <= k < n.
MinimaxTable minimax_table(const DynamicPathNetwork& net, int k);

/// Optimal minimax k-sink placement. With k >= n every vertex gets a sink.
Placement minimax_k_sink(const DynamicPathNetwork& net, int k, MinimaxCounters* counters = nullptr);

/// Recomputes the maximum evacuation time of `placement` from the definition
/// (direct scans, no cluster structures). Throws std::invalid_argument for a
/// malformed placement.
double evaluate_minimax(const DynamicPathNetwork& net, const Placement& placement, const Tolerance& tol = {});

}  // namespace dynsink
