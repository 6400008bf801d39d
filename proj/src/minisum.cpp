#include "dynsink/minisum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dynsink {

double group_arrival_cost(const DynamicPathNetwork& net, double mass, double distance) {
  if (!(mass >= 0.0) || !(distance >= 0.0)) {
    throw std::invalid_argument("group_arrival_cost: mass and distance must be nonnegative");
  }
  return mass * net.tau() * distance + mass * mass / (2.0 * net.capacity());
}

// ---------------------------------------------------------------------------

SumSweep::SumSweep(const DynamicPathNetwork& net, SweepDirection direction, int start)
    : net_(&net), start_(start), next_(start) {
  if (start < 1 || start > net.size()) {
    throw std::out_of_range("sum sweep: start " + std::to_string(start) + " out of range");
  }
  state_.direction = direction;
}

double SumSweep::gap(int from, int to) const {
  return std::abs(net_->position(to) - net_->position(from));
}

void SumSweep::absorb() {
  if (!can_absorb()) throw std::logic_error("sum sweep ran past the end of the path");
  const double tau = net_->tau();
  const double c = net_->capacity();
  const int v = next_;
  const double w = net_->weight(v);
  if (!state_.clusters.empty()) state_.running_sum += state_.running_weight * tau * gap(state_.last, v);
  state_.clusters.push_back({v, w});
  state_.running_sum += w * w / (2.0 * c);
  state_.running_weight += w;
  // A cluster whose stream reaches the new head before that head's stream has
  // left is absorbed into it.
  while (state_.clusters.size() >= 2) {
    const SumSweepState::Cluster last = state_.clusters.back();
    SumSweepState::Cluster& before = state_.clusters[state_.clusters.size() - 2];
    ++state_.test_counter;
    const double travel = tau * gap(before.head, last.head);
    if (travel <= last.mass / c) {
      state_.running_sum += before.mass * (last.mass / c - travel);
      before = {last.head, before.mass + last.mass};
      state_.clusters.pop_back();
    } else {
      break;
    }
  }
  state_.last = v;
  state_.prefix_weight = state_.direction == SweepDirection::kRightward ? interval_weight(*net_, start_, v)
                                                                        : interval_weight(*net_, v, start_);
  next_ = state_.direction == SweepDirection::kRightward ? v + 1 : v - 1;
}

double SumSweep::sum_at(double x) const {
  if (state_.clusters.empty()) return 0.0;
  const double here = net_->position(state_.last);
  const double distance = state_.direction == SweepDirection::kRightward ? x - here : here - x;
  if (distance < 0.0) throw std::invalid_argument("sum sweep: query point behind the sweep front");
  return state_.running_sum + state_.running_weight * net_->tau() * distance;
}

void SumSweep::check_invariants(const Tolerance& tol) const {
  double mass = 0.0;
  for (std::size_t i = 0; i < state_.clusters.size(); ++i) {
    const auto& cl = state_.clusters[i];
    if (!(cl.mass > 0.0)) throw InvariantViolation("sum sweep: nonpositive cluster mass");
    mass += cl.mass;
    if (i > 0) {
      const auto& before = state_.clusters[i - 1];
      const bool ordered = state_.direction == SweepDirection::kRightward ? cl.head > before.head
                                                                          : cl.head < before.head;
      if (!ordered) throw InvariantViolation("sum sweep: cluster heads out of order");
      if (!(net_->tau() * gap(before.head, cl.head) > cl.mass / net_->capacity())) {
        throw InvariantViolation("sum sweep: adjacent clusters should have merged");
      }
    }
  }
  if (!tol.equal(mass, state_.prefix_weight) || !tol.equal(state_.running_weight, state_.prefix_weight)) {
    throw InvariantViolation("sum sweep: cluster masses do not add up to the absorbed supply");
  }
}

// ---------------------------------------------------------------------------

SweepResult sweep_sum_left(const DynamicPathNetwork& net, int start, int end) {
  if (start < 1 || end > net.size() || start > end) throw std::out_of_range("sweep_sum_left: bad range");
  SweepResult out;
  out.sums.reserve(static_cast<std::size_t>(end - start + 1));
  out.sums.push_back(0.0);
  SumSweep sweep(net, SweepDirection::kRightward, start);
  for (int j = start + 1; j <= end; ++j) {
    sweep.absorb();
    out.sums.push_back(sweep.sum_at(net.position(j)));
  }
  out.tests = sweep.test_counter();
  return out;
}

SweepResult sweep_sum_right(const DynamicPathNetwork& net, int start, int end) {
  if (start < 1 || end > net.size() || start > end) throw std::out_of_range("sweep_sum_right: bad range");
  SweepResult out;
  out.sums.assign(static_cast<std::size_t>(end - start + 1), 0.0);
  SumSweep sweep(net, SweepDirection::kLeftward, end);
  for (int j = end - 1; j >= start; --j) {
    sweep.absorb();
    out.sums[static_cast<std::size_t>(j - start)] = sweep.sum_at(net.position(j));
  }
  out.tests = sweep.test_counter();
  return out;
}

MinisumOneSink one_sink_minisum(const DynamicPathNetwork& net, int i, int j) {
  if (i < 1 || j > net.size() || i > j) {
    throw std::out_of_range("one_sink_minisum: need 1 <= i <= j <= n, got (" + std::to_string(i) + ", " +
                            std::to_string(j) + ")");
  }
  const SweepResult left = sweep_sum_left(net, i, j);
  const SweepResult right = sweep_sum_right(net, i, j);
  MinisumOneSink best;
  best.vertex = i;
  best.cost = std::numeric_limits<double>::infinity();
  for (int v = i; v <= j; ++v) {
    const auto idx = static_cast<std::size_t>(v - i);
    const double cost = left.sums[idx] + right.sums[idx];
    if (cost < best.cost) {
      best.cost = cost;
      best.vertex = v;
    }
  }
  best.left_tests = left.tests;
  best.right_tests = right.tests;
  return best;
}

// ---------------------------------------------------------------------------

MongeWeightOracle::MongeWeightOracle(const DynamicPathNetwork& net) : net_(&net) {}

double MongeWeightOracle::weight(int i, int j) {
  const int n = net_->size();
  if (i < 1 || j > n + 1 || i >= j) {
    throw std::out_of_range("monge weight: need 1 <= i < j <= n+1, got (" + std::to_string(i) + ", " +
                            std::to_string(j) + ")");
  }
  ++lookups_;
  const std::uint64_t key = static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(n + 2) +
                            static_cast<std::uint64_t>(j);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  const MinisumOneSink r = one_sink_minisum(*net_, i, j - 1);
  const auto m = static_cast<std::uint64_t>(j - i);
  if (std::max(r.left_tests, r.right_tests) > 2 * (m - 1)) {
    throw InvariantViolation("minisum sweep over " + std::to_string(m) + " vertices made more than " +
                             std::to_string(2 * (m - 1)) + " merge tests");
  }
  ++queries_;
  sweep_tests_ += r.left_tests + r.right_tests;
  memo_.emplace(key, r.cost);
  return r.cost;
}

double monge_edge_weight(MongeWeightOracle& oracle, int i, int j) { return oracle.weight(i, j); }

// ---------------------------------------------------------------------------

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Layer {
  int p;
  const std::vector<double>* prev;
  std::vector<double>* cur;
  std::vector<int>* pred;
  MongeWeightOracle* oracle;
};

// Fills cur[j] for j in [jlo, jhi] knowing the smallest optimal predecessor of
// each lies in [ilo, ihi].
void solve_layer(const Layer& L, int jlo, int jhi, int ilo, int ihi) {
  if (jlo > jhi) return;
  const int mid = jlo + (jhi - jlo) / 2;
  const int lo = std::max(ilo, L.p);
  const int hi = std::min(ihi, mid - 1);
  double best = kInf;
  int arg = lo;
  for (int i = lo; i <= hi; ++i) {
    const double base = (*L.prev)[static_cast<std::size_t>(i)];
    if (base == kInf) continue;
    const double v = base + L.oracle->weight(i, mid);
    if (v < best) {
      best = v;
      arg = i;
    }
  }
  (*L.cur)[static_cast<std::size_t>(mid)] = best;
  (*L.pred)[static_cast<std::size_t>(mid)] = arg;
  solve_layer(L, jlo, mid - 1, ilo, arg);
  solve_layer(L, mid + 1, jhi, arg, ihi);
}

}  // namespace

Placement minisum_k_sink(const DynamicPathNetwork& net, int k, MinisumCounters* counters) {
  if (k < 1) throw std::invalid_argument("k must be at least 1, got " + std::to_string(k));
  const int n = net.size();
  if (k >= n) {
    if (counters) *counters = {};
    Placement all = all_vertex_placement(net, Objective::kMinisum);
    all.k = k;
    return all;
  }

  // F[p][j]: cheapest path u_1 -> u_j with exactly p edges.
  MongeWeightOracle oracle(net);
  const auto nodes = static_cast<std::size_t>(n + 2);
  std::vector<std::vector<double>> F(static_cast<std::size_t>(k + 1), std::vector<double>(nodes, kInf));
  std::vector<std::vector<int>> pred(static_cast<std::size_t>(k + 1), std::vector<int>(nodes, 0));
  F[0][1] = 0.0;
  MinisumCounters local;
  for (int p = 1; p <= k; ++p) {
    const std::uint64_t before = oracle.lookups();
    const int jlo = p + 1;
    const int jhi = n + 1 - (k - p);
    if (p == 1) {
      for (int j = jlo; j <= jhi; ++j) {
        F[1][static_cast<std::size_t>(j)] = oracle.weight(1, j);
        pred[1][static_cast<std::size_t>(j)] = 1;
      }
    } else {
      const Layer layer{p, &F[static_cast<std::size_t>(p - 1)], &F[static_cast<std::size_t>(p)],
                        &pred[static_cast<std::size_t>(p)], &oracle};
      solve_layer(layer, jlo, jhi, p, jhi - 1);
      for (int j = jlo + 1; j <= jhi; ++j) {
        if (pred[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)] <
            pred[static_cast<std::size_t>(p)][static_cast<std::size_t>(j - 1)]) {
          throw InvariantViolation("minisum layer " + std::to_string(p) + ": predecessor decreases at node " +
                                   std::to_string(j));
        }
      }
    }
    local.layer_lookups.push_back(oracle.lookups() - before);
  }

  std::vector<int> path(static_cast<std::size_t>(k + 1), 0);
  path[static_cast<std::size_t>(k)] = n + 1;
  for (int p = k; p >= 1; --p) {
    path[static_cast<std::size_t>(p - 1)] =
        pred[static_cast<std::size_t>(p)][static_cast<std::size_t>(path[static_cast<std::size_t>(p)])];
  }
  if (path[0] != 1) throw InvariantViolation("minisum reconstruction did not reach node 1");

  Placement out;
  out.objective = Objective::kMinisum;
  out.k = k;
  std::vector<double> costs;
  for (int g = 0; g < k; ++g) {
    const int first = path[static_cast<std::size_t>(g)];
    const int last = path[static_cast<std::size_t>(g + 1)] - 1;
    const MinisumOneSink r = one_sink_minisum(net, first, last);
    out.sinks.push_back(net.position(r.vertex));
    costs.push_back(r.cost);
    if (g + 1 < k) out.dividers.push_back(last);
  }
  out.cost = F[static_cast<std::size_t>(k)][static_cast<std::size_t>(n + 1)];
  out.groups = placement_groups(net, out.sinks, out.dividers);
  for (std::size_t g = 0; g < out.groups.size(); ++g) out.groups[g].cost = costs[g];

  if (counters) {
    local.weight_queries = oracle.query_counter();
    local.weight_lookups = oracle.lookups();
    local.sweep_tests = oracle.sweep_tests();
    *counters = std::move(local);
  }
  return out;
}

// ---------------------------------------------------------------------------

double minisum_group_cost(const DynamicPathNetwork& net, int first, int last, double x) {
  double total = 0.0;
  SumSweep left(net, SweepDirection::kRightward, first);
  while (left.can_absorb() && left.next_vertex() <= last && net.position(left.next_vertex()) < x) left.absorb();
  total += left.sum_at(x);
  SumSweep right(net, SweepDirection::kLeftward, last);
  while (right.can_absorb() && right.next_vertex() >= first && net.position(right.next_vertex()) > x) {
    right.absorb();
  }
  total += right.sum_at(x);
  return total;
}

double evaluate_minisum(const DynamicPathNetwork& net, const Placement& placement, const Tolerance& tol) {
  const std::vector<GroupRecord> groups = placement_groups(net, placement.sinks, placement.dividers, tol);
  double total = 0.0;
  for (const GroupRecord& g : groups) {
    const double x = std::clamp(g.sink, net.position(g.first), net.position(g.last));
    total += minisum_group_cost(net, g.first, g.last, x);
  }
  return total;
}

}  // namespace dynsink
