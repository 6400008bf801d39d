#include "dynsink/placement.hpp"

#include <stdexcept>

namespace dynsink {

std::string_view to_string(Objective objective) {
  return objective == Objective::kMinimax ? "minimax" : "minisum";
}

std::optional<Objective> parse_objective(std::string_view text) {
  if (text == "minimax") return Objective::kMinimax;
  if (text == "minisum") return Objective::kMinisum;
  return std::nullopt;
}

std::vector<GroupRecord> placement_groups(const DynamicPathNetwork& net, const std::vector<double>& sinks,
                                          const std::vector<int>& dividers, const Tolerance& tol) {
  const int n = net.size();
  if (sinks.empty()) throw std::invalid_argument("placement has no sinks");
  if (sinks.size() != dividers.size() + 1) {
    throw std::invalid_argument("placement has " + std::to_string(sinks.size()) + " sinks but " +
                                std::to_string(dividers.size()) + " dividers");
  }
  std::vector<GroupRecord> groups;
  groups.reserve(sinks.size());
  int prev = 0;
  for (std::size_t g = 0; g < sinks.size(); ++g) {
    const int last = g < dividers.size() ? dividers[g] : n;
    if (last <= prev || last > n || (g < dividers.size() && last >= n)) {
      throw std::invalid_argument("divider " + std::to_string(g + 1) + " = " + std::to_string(last) +
                                  " breaks 0 < d_1 < ... < d_{k-1} < n");
    }
    const int first = prev + 1;
    const double lo = net.position(first);
    const double hi = net.position(last);
    const double x = sinks[g];
    if (!(tol.less_equal(lo, x) && tol.less_equal(x, hi))) {
      throw std::invalid_argument("sink " + std::to_string(g + 1) + " at " + std::to_string(x) +
                                  " lies outside its group [" + std::to_string(lo) + ", " +
                                  std::to_string(hi) + "]");
    }
    groups.push_back({first, last, x, 0.0});
    prev = last;
  }
  return groups;
}

Placement all_vertex_placement(const DynamicPathNetwork& net, Objective objective) {
  Placement p;
  p.objective = objective;
  p.k = net.size();
  for (int i = 1; i <= net.size(); ++i) {
    p.sinks.push_back(net.position(i));
    if (i < net.size()) p.dividers.push_back(i);
    p.groups.push_back({i, i, net.position(i), 0.0});
  }
  p.cost = 0.0;
  return p;
}

}  // namespace dynsink
