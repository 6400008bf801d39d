#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dynsink/network.hpp"

namespace dynsink {

enum class Objective { kMinimax, kMinisum };

std::string_view to_string(Objective objective);
std::optional<Objective> parse_objective(std::string_view text);

/// One sink and the consecutive vertices [first, last] it serves.
struct GroupRecord {
  int first = 1;
  int last = 1;
  double sink = 0.0;
  double cost = 0.0;

  bool operator==(const GroupRecord&) const = default;
};

/// A k-sink solution: sinks x_1 <= ... <= x_k and the (k-1)-divider
/// d_1 < ... < d_{k-1}, with d_0 = 0 and d_k = n implied. Group g covers
/// vertices d_{g-1}+1 .. d_g.
struct Placement {
  Objective objective = Objective::kMinimax;
  int k = 1;
  std::vector<double> sinks;
  std::vector<int> dividers;
  double cost = 0.0;
  std::vector<GroupRecord> groups;
};

/// Builds the group list of a placement from its sinks and dividers. Throws
/// std::invalid_argument if the divider is not strictly increasing inside
/// [1, n-1], the sink count is not dividers+1, or a sink lies outside its
/// group's span by more than the tolerance.
std::vector<GroupRecord> placement_groups(const DynamicPathNetwork& net, const std::vector<double>& sinks,
                                          const std::vector<int>& dividers, const Tolerance& tol = {});

/// Placement with a sink on every vertex (zero cost).
Placement all_vertex_placement(const DynamicPathNetwork& net, Objective objective);

}  // namespace dynsink
