#include "dynsink/minimax.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dynsink {

std::optional<CellSolution> locate_in_cell(const DynamicPathNetwork& net, int l, double left_at_l,
                                           double right_at_l, double left_at_next, double right_at_next) {
  if (!(left_at_l <= right_at_l && left_at_next >= right_at_next)) return std::nullopt;
  return balance_in_cell(net, l, right_at_l, left_at_next);
}

CellSolution balance_in_cell(const DynamicPathNetwork& net, int l, double right_at_l, double left_at_next) {
  const double len = net.position(l + 1) - net.position(l);
  const double delta = net.tau() * len;
  const double alpha = (right_at_l - left_at_next + delta) / (2.0 * delta);
  if (alpha < 0.0) return {net.position(l), right_at_l};
  if (alpha >= 1.0) return {net.position(l + 1), left_at_next};
  return {net.position(l) + alpha * len, right_at_l - alpha * delta};
}

// ---------------------------------------------------------------------------

namespace {

LeftClusterStructure left_one_step(const DynamicPathNetwork& net, int origin) {
  LeftClusterStructure s(net, origin);
  s.advance_frontier();
  return s;
}

}  // namespace

OneSinkScanner::OneSinkScanner(const DynamicPathNetwork& net, int origin)
    : net_(&net),
      origin_(origin),
      end_(origin),
      cell_(origin),
      left_here_(net, origin),
      right_here_(net, origin) {
  if (origin < net.size()) left_next_.emplace(left_one_step(net, origin));
}

void OneSinkScanner::move_cell() {
  const int n = net_->size();
  left_here_.advance_frontier();
  if (cell_ + 1 == n) {
    retired_ += left_next_->counters();
    left_next_.reset();
  } else {
    left_next_->advance_frontier();
  }
  right_here_.advance_origin();
  if (cell_ + 1 == end_) {
    retired_ += right_next_->counters();
    right_next_.reset();
  } else {
    right_next_->advance_origin();
  }
  ++cell_;
}

void OneSinkScanner::advance_end() {
  if (end_ >= net_->size()) throw std::logic_error("advance_end past the last vertex");
  right_here_.advance_frontier();
  if (right_next_) {
    right_next_->advance_frontier();
  } else {
    right_next_.emplace(*net_, end_ + 1);
  }
  ++end_;
}

void OneSinkScanner::advance_origin() {
  if (origin_ >= end_) throw std::logic_error("advance_origin on a single-vertex interval");
  if (cell_ == origin_) move_cell();
  left_here_.advance_origin();
  if (left_next_) left_next_->advance_origin();
  ++origin_;
}

OneSinkResult OneSinkScanner::solve() {
  if (origin_ == end_) return {origin_, end_, net_->position(origin_), 0.0, origin_};
  for (;;) {
    const double left_next = left_next_->query();
    const double right_next = right_next_->query();
    ++cells_tested_;
    const bool found = left_next >= right_next;
    if (trace_) trace_({origin_, end_, cell_, left_next, right_next, found});
    if (found) break;
    move_cell();
  }
  const CellSolution sol = balance_in_cell(*net_, cell_, right_here_.query(), left_next_->query());
  return {origin_, end_, sol.sink, sol.cost, cell_};
}

StructureCounters OneSinkScanner::structure_counters() const {
  StructureCounters total = retired_;
  total += left_here_.counters();
  total += right_here_.counters();
  if (left_next_) total += left_next_->counters();
  if (right_next_) total += right_next_->counters();
  return total;
}

OneSinkResult one_sink_interval(const DynamicPathNetwork& net, int i, int j) {
  if (i < 1 || j > net.size() || i > j) {
    throw std::out_of_range("one_sink_interval: need 1 <= i <= j <= n, got (" + std::to_string(i) + ", " +
                            std::to_string(j) + ")");
  }
  OneSinkScanner scanner(net, i);
  for (int e = i; e < j; ++e) scanner.advance_end();
  return scanner.solve();
}

// ---------------------------------------------------------------------------

std::uint64_t MinimaxCounters::cells_tested() const {
  std::uint64_t s = 0;
  for (const auto& r : rows) s += r.cells_tested;
  return s;
}

std::uint64_t MinimaxCounters::divider_steps() const {
  std::uint64_t s = 0;
  for (const auto& r : rows) s += r.divider_steps;
  return s;
}

std::uint64_t MinimaxCounters::merge_tests() const {
  std::uint64_t s = 0;
  for (const auto& r : rows) s += r.structures.tests;
  return s;
}

std::uint64_t MinimaxCounters::total() const {
  std::uint64_t s = 0;
  for (const auto& r : rows) s += r.total();
  return s;
}

namespace {

void absorb(MinimaxRowCounters& row, const OneSinkScanner& scanner) {
  row.cells_tested += scanner.cells_tested();
  row.structures += scanner.structure_counters();
}

void first_row(const DynamicPathNetwork& net, MinimaxTable& table) {
  const int n = net.size();
  MinimaxRowCounters counters;
  counters.p = 1;
  OneSinkScanner scanner(net, 1);
  for (int i = 1; i <= n; ++i) {
    if (i > 1) scanner.advance_end();
    const OneSinkResult r = scanner.solve();
    table.opt[1][i] = r.cost;
    table.divider[1][i] = 0;
    table.last_sink[1][i] = r.sink;
    table.last_cost[1][i] = r.cost;
  }
  absorb(counters, scanner);
  table.counters.rows.push_back(counters);
}

// Row p >= 2. f(t) = max(OPT(p-1,1,t), OPT(1,t+1,i)); `scan` serves [t+1, i]
// and `ahead` serves [t+2, i] whenever t+2 <= i.
void later_row(const DynamicPathNetwork& net, int p, MinimaxTable& table) {
  const int n = net.size();
  const std::vector<double>& prev = table.opt[p - 1];
  MinimaxRowCounters counters;
  counters.p = p;

  for (int i = 1; i <= p; ++i) {
    table.opt[p][i] = 0.0;
    table.divider[p][i] = i - 1;
    table.last_sink[p][i] = net.position(i);
    table.last_cost[p][i] = 0.0;
  }

  OneSinkScanner scan(net, p);
  std::optional<OneSinkScanner> ahead;
  int t = p - 1;
  for (int i = p + 1; i <= n; ++i) {
    scan.advance_end();
    if (ahead) {
      ahead->advance_end();
    } else if (t + 2 == i) {
      ahead.emplace(net, i);
    }
    OneSinkResult here = scan.solve();
    double f_here = std::max(prev[t], here.cost);
    while (t + 1 <= i - 1) {
      const OneSinkResult next = ahead->solve();
      const double a = prev[t + 1];
      const double f_next = std::max(a, next.cost);
      // Past this point f only grows: the left part dominates and is nondecreasing.
      if (f_next > f_here && a >= next.cost) break;
      ++t;
      ++counters.divider_steps;
      scan.advance_origin();
      if (t + 2 <= i) {
        ahead->advance_origin();
      } else {
        absorb(counters, *ahead);
        ahead.reset();
      }
      here = next;
      f_here = f_next;
    }
    table.opt[p][i] = f_here;
    table.divider[p][i] = t;
    table.last_sink[p][i] = here.sink;
    table.last_cost[p][i] = here.cost;
  }
  absorb(counters, scan);
  if (ahead) absorb(counters, *ahead);
  table.counters.rows.push_back(counters);
}

}  // namespace

MinimaxTable minimax_table(const DynamicPathNetwork& net, int k) {
  const int n = net.size();
  if (k < 1 || k >= n) throw std::invalid_argument("minimax_table: need 1 <= k < n");
  MinimaxTable table;
  table.k = k;
  const auto rows = static_cast<std::size_t>(k + 1);
  const auto cols = static_cast<std::size_t>(n + 1);
  table.opt.assign(rows, std::vector<double>(cols, 0.0));
  table.divider.assign(rows, std::vector<int>(cols, 0));
  table.last_sink.assign(rows, std::vector<double>(cols, 0.0));
  table.last_cost.assign(rows, std::vector<double>(cols, 0.0));
  first_row(net, table);
  for (int p = 2; p <= k; ++p) later_row(net, p, table);
  return table;
}

Placement minimax_k_sink(const DynamicPathNetwork& net, int k, MinimaxCounters* counters) {
  if (k < 1) throw std::invalid_argument("k must be at least 1, got " + std::to_string(k));
  const int n = net.size();
  if (k >= n) {
    if (counters) *counters = {};
    Placement all = all_vertex_placement(net, Objective::kMinimax);
    all.k = k;
    return all;
  }
  MinimaxTable table = minimax_table(net, k);

  Placement out;
  out.objective = Objective::kMinimax;
  out.k = k;
  out.sinks.assign(static_cast<std::size_t>(k), 0.0);
  out.dividers.assign(static_cast<std::size_t>(k - 1), 0);
  std::vector<double> costs(static_cast<std::size_t>(k), 0.0);
  int i = n;
  for (int p = k; p >= 1; --p) {
    out.sinks[static_cast<std::size_t>(p - 1)] = table.last_sink[p][i];
    costs[static_cast<std::size_t>(p - 1)] = table.last_cost[p][i];
    const int d = table.divider[p][i];
    if (p > 1) out.dividers[static_cast<std::size_t>(p - 2)] = d;
    i = d;
  }
  if (i != 0) throw InvariantViolation("minimax reconstruction did not reach vertex 0");
  out.cost = table.opt[k][n];
  out.groups = placement_groups(net, out.sinks, out.dividers);
  for (std::size_t g = 0; g < out.groups.size(); ++g) out.groups[g].cost = costs[g];
  if (counters) *counters = std::move(table.counters);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Maximum evacuation time of vertices [first, last] to a sink at x, by direct
// scans over every vertex.
double group_minimax_cost(const DynamicPathNetwork& net, int first, int last, double x) {
  const double tau = net.tau();
  const double c = net.capacity();
  double worst = 0.0;
  double mass = 0.0;
  for (int h = first; h <= last && net.position(h) < x; ++h) {
    mass += net.weight(h);
    worst = std::max(worst, tau * (x - net.position(h)) + mass / c);
  }
  mass = 0.0;
  for (int h = last; h >= first && net.position(h) > x; --h) {
    mass += net.weight(h);
    worst = std::max(worst, tau * (net.position(h) - x) + mass / c);
  }
  return worst;
}

}  // namespace

double evaluate_minimax(const DynamicPathNetwork& net, const Placement& placement, const Tolerance& tol) {
  const std::vector<GroupRecord> groups = placement_groups(net, placement.sinks, placement.dividers, tol);
  double worst = 0.0;
  for (const GroupRecord& g : groups) {
    const double x = std::clamp(g.sink, net.position(g.first), net.position(g.last));
    worst = std::max(worst, group_minimax_cost(net, g.first, g.last, x));
  }
  return worst;
}

}  // namespace dynsink
