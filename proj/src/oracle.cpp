#include "dynsink/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

namespace dynsink::oracle {

namespace {

void check_range(const DynamicPathNetwork& net, int i, int j, const char* who) {
  if (i < 1 || j > net.size() || i > j) {
    throw std::out_of_range(std::string(who) + ": need 1 <= i <= j <= n, got (" + std::to_string(i) + ", " +
                            std::to_string(j) + ")");
  }
}

}  // namespace

double left_time_at(const DynamicPathNetwork& net, int i, int j, double x) {
  double worst = 0.0;
  double mass = 0.0;
  for (int h = i; h <= j && net.position(h) < x; ++h) {
    mass += net.weight(h);
    worst = std::max(worst, net.tau() * (x - net.position(h)) + mass / net.capacity());
  }
  return worst;
}

double right_time_at(const DynamicPathNetwork& net, int i, int j, double x) {
  double worst = 0.0;
  double mass = 0.0;
  for (int h = j; h >= i && net.position(h) > x; --h) {
    mass += net.weight(h);
    worst = std::max(worst, net.tau() * (net.position(h) - x) + mass / net.capacity());
  }
  return worst;
}

double minimax_cost_at(const DynamicPathNetwork& net, int i, int j, double x) {
  return std::max(left_time_at(net, i, j, x), right_time_at(net, i, j, x));
}

double oracle_L(const DynamicPathNetwork& net, int alpha, int beta) {
  check_range(net, alpha, beta, "oracle_L");
  return left_time_at(net, alpha, beta, net.position(beta));
}

double oracle_R(const DynamicPathNetwork& net, int beta, int gamma) {
  check_range(net, beta, gamma, "oracle_R");
  return right_time_at(net, beta, gamma, net.position(beta));
}

SinkValue oracle_minimax_1sink(const DynamicPathNetwork& net, int i, int j) {
  check_range(net, i, j, "oracle_minimax_1sink");
  const double tau = net.tau();
  const double c = net.capacity();
  // Source h contributes tau*x + a[h] on cells right of it and b[h] - tau*x
  // on cells left of it.
  std::vector<double> a(static_cast<std::size_t>(j + 1), 0.0);
  std::vector<double> b(static_cast<std::size_t>(j + 1), 0.0);
  double mass = 0.0;
  for (int h = i; h <= j; ++h) {
    mass += net.weight(h);
    a[static_cast<std::size_t>(h)] = mass / c - tau * net.position(h);
  }
  mass = 0.0;
  for (int h = j; h >= i; --h) {
    mass += net.weight(h);
    b[static_cast<std::size_t>(h)] = mass / c + tau * net.position(h);
  }
  std::vector<double> candidates;
  for (int h = i; h <= j; ++h) candidates.push_back(net.position(h));
  for (int l = i; l < j; ++l) {
    const double lo = net.position(l);
    const double hi = net.position(l + 1);
    for (int h = i; h <= l; ++h) {
      for (int r = l + 1; r <= j; ++r) {
        const double x = (b[static_cast<std::size_t>(r)] - a[static_cast<std::size_t>(h)]) / (2.0 * tau);
        if (x > lo && x < hi) candidates.push_back(x);
      }
    }
  }
  SinkValue best{net.position(i), std::numeric_limits<double>::infinity()};
  for (double x : candidates) {
    const double cost = minimax_cost_at(net, i, j, x);
    if (cost < best.cost || (cost == best.cost && x < best.sink)) best = {x, cost};
  }
  return best;
}

// ---------------------------------------------------------------------------

namespace {

using Interval = std::pair<double, double>;

// Busy intervals of the stream leaving `vertex` given the stream arriving at it.
std::vector<Interval> depart(const std::vector<Interval>& arriving, double own_mass, double c) {
  std::vector<Interval> out;
  double start = 0.0;
  double end = own_mass / c;
  for (const auto& [a, b] : arriving) {
    if (a <= end) {
      end += b - a;
    } else {
      out.emplace_back(start, end);
      start = a;
      end = b;
    }
  }
  out.emplace_back(start, end);
  return out;
}

double interval_cost(const std::vector<Interval>& intervals, double shift, double c) {
  double total = 0.0;
  for (const auto& [s, e] : intervals) {
    const double s2 = s + shift;
    const double e2 = e + shift;
    total += c * (e2 - s2) * (s2 + e2) / 2.0;
  }
  return total;
}

}  // namespace

double fluid_group_sum(const DynamicPathNetwork& net, int i, int j, double x) {
  if (i > j) return 0.0;
  const double tau = net.tau();
  const double c = net.capacity();
  double total = 0.0;

  std::vector<Interval> stream;
  int last = 0;
  for (int h = i; h <= j && net.position(h) < x; ++h) {
    if (last != 0) {
      const double shift = tau * (net.position(h) - net.position(last));
      for (auto& [s, e] : stream) s += shift, e += shift;
    }
    stream = depart(stream, net.weight(h), c);
    last = h;
  }
  if (last != 0) total += interval_cost(stream, tau * (x - net.position(last)), c);

  stream.clear();
  last = 0;
  for (int h = j; h >= i && net.position(h) > x; --h) {
    if (last != 0) {
      const double shift = tau * (net.position(last) - net.position(h));
      for (auto& [s, e] : stream) s += shift, e += shift;
    }
    stream = depart(stream, net.weight(h), c);
    last = h;
  }
  if (last != 0) total += interval_cost(stream, tau * (net.position(last) - x), c);
  return total;
}

VertexValue oracle_minisum_1sink(const DynamicPathNetwork& net, int i, int j) {
  check_range(net, i, j, "oracle_minisum_1sink");
  VertexValue best{i, std::numeric_limits<double>::infinity()};
  for (int v = i; v <= j; ++v) {
    const double cost = fluid_group_sum(net, i, j, net.position(v));
    if (cost < best.cost) best = {v, cost};
  }
  return best;
}

// ---------------------------------------------------------------------------

std::uint64_t divider_count(int n, int k) {
  if (k < 1 || n < 1 || k > n) return 0;
  const std::uint64_t top = static_cast<std::uint64_t>(n - 1);
  std::uint64_t r = std::min<std::uint64_t>(static_cast<std::uint64_t>(k - 1), top - (k - 1));
  long double acc = 1.0L;
  for (std::uint64_t t = 0; t < r; ++t) {
    acc = acc * static_cast<long double>(top - t) / static_cast<long double>(t + 1);
    if (acc >= 1.8e19L) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(std::llround(acc));
}

namespace {

template <typename GroupFn>
void for_each_divider(int n, int k, std::vector<int>& d, int from, GroupFn&& visit) {
  if (static_cast<int>(d.size()) == k - 1) {
    visit(d);
    return;
  }
  const int remaining = k - 1 - static_cast<int>(d.size());
  for (int v = from; v <= n - remaining; ++v) {
    d.push_back(v);
    for_each_divider(n, k, d, v + 1, visit);
    d.pop_back();
  }
}

// Exhaustive divider search. `group` returns (sink, cost) of one group and
// `combine` folds group costs into the objective.
template <typename GroupFn, typename Combine>
Placement exhaustive(const DynamicPathNetwork& net, int k, Objective objective, std::uint64_t budget,
                     GroupFn&& group, Combine&& combine) {
  if (k < 1) throw std::invalid_argument("k must be at least 1, got " + std::to_string(k));
  const int n = net.size();
  if (k >= n) {
    Placement all = all_vertex_placement(net, objective);
    all.k = k;
    return all;
  }
  const std::uint64_t count = divider_count(n, k);
  if (count > budget) {
    throw BudgetExceeded("oracle: " + std::to_string(count) + " dividers exceed the budget of " +
                         std::to_string(budget));
  }
  const auto side = static_cast<std::size_t>(n + 1);
  std::vector<std::optional<SinkValue>> memo(side * side);
  auto solve_group = [&](int first, int last) -> const SinkValue& {
    auto& slot = memo[static_cast<std::size_t>(first) * side + static_cast<std::size_t>(last)];
    if (!slot) slot = group(first, last);
    return *slot;
  };

  Placement best;
  best.objective = objective;
  best.k = k;
  best.cost = std::numeric_limits<double>::infinity();
  std::vector<int> d;
  for_each_divider(n, k, d, 1, [&](const std::vector<int>& dividers) {
    double cost = 0.0;
    bool first_group = true;
    int prev = 0;
    for (std::size_t g = 0; g <= dividers.size(); ++g) {
      const int last = g < dividers.size() ? dividers[g] : n;
      const double gc = solve_group(prev + 1, last).cost;
      cost = first_group ? gc : combine(cost, gc);
      first_group = false;
      prev = last;
    }
    if (cost < best.cost) {
      best.cost = cost;
      best.dividers = dividers;
    }
  });

  int prev = 0;
  for (std::size_t g = 0; g <= best.dividers.size(); ++g) {
    const int last = g < best.dividers.size() ? best.dividers[g] : n;
    const SinkValue& sv = solve_group(prev + 1, last);
    best.sinks.push_back(sv.sink);
    best.groups.push_back({prev + 1, last, sv.sink, sv.cost});
    prev = last;
  }
  return best;
}

}  // namespace

Placement oracle_minimax_k(const DynamicPathNetwork& net, int k, std::uint64_t budget) {
  return exhaustive(
      net, k, Objective::kMinimax, budget, [&](int i, int j) { return oracle_minimax_1sink(net, i, j); },
      [](double a, double b) { return std::max(a, b); });
}

Placement oracle_minisum_k(const DynamicPathNetwork& net, int k, std::uint64_t budget) {
  return exhaustive(
      net, k, Objective::kMinisum, budget,
      [&](int i, int j) {
        const VertexValue v = oracle_minisum_1sink(net, i, j);
        return SinkValue{net.position(v.vertex), v.cost};
      },
      [](double a, double b) { return a + b; });
}

// ---------------------------------------------------------------------------

namespace {

struct Parcel {
  double ready;
  double size;
};

// Pushes the parcels of `order` (vertices listed from the far end toward the
// sink) through the path; returns sum of size * arrival time at x.
double push_parcels(const DynamicPathNetwork& net, const std::vector<int>& order, double x, int parcels) {
  if (order.empty()) return 0.0;
  const double tau = net.tau();
  const double c = net.capacity();
  std::vector<Parcel> stream;
  std::vector<Parcel> next;
  for (std::size_t idx = 0; idx < order.size(); ++idx) {
    const int h = order[idx];
    next.clear();
    const double q = net.weight(h) / parcels;
    for (int m = 0; m < parcels; ++m) next.push_back({0.0, q});
    next.insert(next.end(), stream.begin(), stream.end());
    const double target = idx + 1 < order.size() ? net.position(order[idx + 1]) : x;
    const double travel = tau * std::abs(target - net.position(h));
    double free_at = 0.0;
    for (Parcel& p : next) {
      const double leave = std::max(p.ready, free_at);
      free_at = leave + p.size / c;
      p.ready = leave + travel;
    }
    stream.swap(next);
  }
  double total = 0.0;
  for (const Parcel& p : stream) total += p.size * p.ready;
  return total;
}

}  // namespace

double simulate_group_sum(const DynamicPathNetwork& net, int i, int j, double x, int parcels) {
  if (parcels < 1) throw std::invalid_argument("simulate_group_sum: parcels must be at least 1");
  if (i > j) return 0.0;
  std::vector<int> left;
  for (int h = i; h <= j && net.position(h) < x; ++h) left.push_back(h);
  std::vector<int> right;
  for (int h = j; h >= i && net.position(h) > x; --h) right.push_back(h);
  return push_parcels(net, left, x, parcels) + push_parcels(net, right, x, parcels);
}

// ---------------------------------------------------------------------------

std::vector<MongeViolation> check_monge(const DynamicPathNetwork& net, double abs_tol) {
  const int n = net.size();
  const auto side = static_cast<std::size_t>(n + 2);
  std::vector<double> opt(side * side, 0.0);
  auto at = [&](int i, int j) -> double& { return opt[static_cast<std::size_t>(i) * side + static_cast<std::size_t>(j)]; };
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n + 1; ++j) at(i, j) = oracle_minisum_1sink(net, i, j - 1).cost;
  }
  std::vector<MongeViolation> out;
  for (int i = 1; i + 2 <= n + 1; ++i) {
    for (int j = i + 2; j + 1 <= n + 1; ++j) {
      const double lhs = at(i, j) + at(i + 1, j + 1);
      const double rhs = at(i + 1, j) + at(i, j + 1);
      if (lhs > rhs + abs_tol) out.push_back({i, j, lhs, rhs});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

OracleReport make_report(std::string digest, std::string operation, std::vector<double> solver,
                         std::vector<double> oracle, std::uint64_t seed, const Tolerance& tol) {
  OracleReport r;
  r.digest = std::move(digest);
  r.operation = std::move(operation);
  r.seed = seed;
  r.pass = solver.size() == oracle.size();
  if (!r.pass) r.note = "value lists differ in length";
  const std::size_t m = std::min(solver.size(), oracle.size());
  for (std::size_t i = 0; i < m; ++i) {
    const double dev = std::abs(solver[i] - oracle[i]);
    const double scale = std::max(std::abs(solver[i]), std::abs(oracle[i]));
    r.max_abs_dev = std::max(r.max_abs_dev, dev);
    if (scale > 0.0) r.max_rel_dev = std::max(r.max_rel_dev, dev / scale);
    if (!tol.equal(solver[i], oracle[i])) r.pass = false;
  }
  r.solver = std::move(solver);
  r.oracle = std::move(oracle);
  return r;
}

nlohmann::json to_json(const OracleReport& report) {
  nlohmann::json j{{"digest", report.digest},
                   {"operation", report.operation},
                   {"solver", report.solver},
                   {"oracle", report.oracle},
                   {"max_abs_dev", report.max_abs_dev},
                   {"max_rel_dev", report.max_rel_dev},
                   {"pass", report.pass},
                   {"seed", report.seed}};
  if (!report.note.empty()) j["note"] = report.note;
  return j;
}

}  // namespace dynsink::oracle
