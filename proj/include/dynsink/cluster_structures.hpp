#pragma once

#include <cstdint>
#include <deque>
#include <string>

#include "dynsink/network.hpp"

namespace dynsink {

/// Work counters shared by both cluster structures.
struct StructureCounters {
  std::uint64_t tests = 0;  // merge / domination tests
  std::uint64_t frontier_advances = 0;
  std::uint64_t origin_advances = 0;

  StructureCounters& operator+=(const StructureCounters& o) {
    tests += o.tests;
    frontier_advances += o.frontier_advances;
    origin_advances += o.origin_advances;
    return *this;
  }
};

/// Cluster decomposition of the supplies of vertices [origin, frontier-1]
/// evacuating rightward to vertex `frontier`.
///
/// Each cluster is a maximal batch of consecutive vertices whose supply
/// leaves its rightmost vertex (the head) as one contiguous stream of rate c.
/// Heads are strictly increasing, the last head is frontier-1, and for every
/// adjacent pair tau*(v[head_{i+1}] - v[head_i]) > mass_{i+1}/c (otherwise the
/// earlier stream would be blocked and the two would merge).
///
/// Masses are kept as prefix-sum differences so that any sequence of
/// advances ending at (origin, frontier) yields bit-identical contents.
class LeftClusterStructure {
 public:
  struct Cluster {
    int head;
    double mass;
    bool operator==(const Cluster&) const = default;
  };

  /// Empty structure at (origin, origin).
  LeftClusterStructure(const DynamicPathNetwork& net, int origin);

  int origin() const { return origin_; }
  int frontier() const { return frontier_; }
  bool empty() const { return clusters_.empty(); }
  std::size_t size() const { return clusters_.size(); }
  const std::deque<Cluster>& clusters() const { return clusters_; }

  /// L(origin, frontier): time for all supply of [origin, frontier) to reach
  /// v[frontier]. Zero when empty.
  double query() const;

  /// origin -> origin+1. Requires origin < frontier.
  void advance_origin();
  /// frontier -> frontier+1. Requires frontier < n.
  void advance_frontier();

  const StructureCounters& counters() const { return counters_; }
  std::uint64_t test_counter() const { return counters_.tests; }

  /// Throws InvariantViolation when the structure is inconsistent.
  void check_invariants() const;

  /// One line per cluster: "<head> <mass>".
  std::string dump() const;

  /// Compares position and clusters; counters are ignored.
  bool operator==(const LeftClusterStructure& other) const;

 private:
  double mass_between(int prev_head, int head) const;

  const DynamicPathNetwork* net_;
  int origin_;
  int frontier_;
  std::deque<Cluster> clusters_;
  StructureCounters counters_;
};

/// Suffix-maximum chain for the supplies of vertices (origin, frontier]
/// evacuating leftward to vertex `origin`.
///
/// head_1 is the vertex maximizing tau*v[j] + (supply of [j, frontier])/c over
/// origin < j <= frontier (ties go to the larger index), head_2 the maximizer
/// over head_1 < j <= frontier, and so on; the last head is the frontier.
/// suffix_mass_i is the supply of vertices head_i..n and offset the supply of
/// frontier+1..n, so suffix_mass_1 - offset is the supply behind head_1.
class RightClusterStructure {
 public:
  struct Cluster {
    int head;
    double suffix_mass;
    bool operator==(const Cluster&) const = default;
  };

  /// Empty structure at (origin, origin).
  RightClusterStructure(const DynamicPathNetwork& net, int origin);

  int origin() const { return origin_; }
  int frontier() const { return frontier_; }
  bool empty() const { return clusters_.empty(); }
  std::size_t size() const { return clusters_.size(); }
  const std::deque<Cluster>& clusters() const { return clusters_; }
  double offset() const { return offset_; }

  /// R(origin, frontier). Zero when empty.
  double query() const;

  /// origin -> origin+1. Requires origin < frontier.
  void advance_origin();
  /// frontier -> frontier+1. Requires frontier < n.
  void advance_frontier();

  const StructureCounters& counters() const { return counters_; }
  std::uint64_t test_counter() const { return counters_.tests; }

  void check_invariants() const;

  /// One line per cluster: "<head> <suffix_mass>".
  std::string dump() const;

  bool operator==(const RightClusterStructure& other) const;

 private:
  const DynamicPathNetwork* net_;
  int origin_;
  int frontier_;
  double offset_;
  std::deque<Cluster> clusters_;
  StructureCounters counters_;
};

/// D_L(alpha, beta), built by beta-alpha frontier advances from (alpha, alpha).
LeftClusterStructure build_left(const DynamicPathNetwork& net, int alpha, int beta);
/// D_R(beta, gamma), built by gamma-beta frontier advances from (beta, beta).
RightClusterStructure build_right(const DynamicPathNetwork& net, int beta, int gamma);

}  // namespace dynsink
