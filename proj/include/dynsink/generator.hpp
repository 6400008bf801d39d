#pragma once

#include <cstdint>
#include <random>

#include "dynsink/network.hpp"

namespace dynsink {

struct GenRanges {
  double edge_min = 0.5;
  double edge_max = 10.0;
  double weight_min = 0.5;
  double weight_max = 10.0;
  double param_min = 0.5;  // capacity and tau
  double param_max = 4.0;
  /// Draw small integers instead (edges 1..4, weights 1..4, c and tau in
  /// {1, 2}); produces many exact congestion ties.
  bool integral = false;
};

/// Deterministic pseudorandom instance; the same (n, seed, ranges) always
/// yields the same values.
RawInstance generate_instance(int n, std::uint64_t seed, const GenRanges& ranges = {});

/// Same, drawing from a caller-owned engine.
RawInstance generate_instance(int n, std::mt19937_64& rng, const GenRanges& ranges = {});

}  // namespace dynsink
