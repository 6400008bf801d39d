#include "dynsink/generator.hpp"

#include <stdexcept>
#include <string>

namespace dynsink {

namespace {

// Uniform draw in [lo, hi] from the top 53 bits, independent of the standard
// library's distribution implementation.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

int small_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

RawInstance generate_instance(int n, std::mt19937_64& rng, const GenRanges& r) {
  if (n < 1) throw std::invalid_argument("n must be at least 1, got " + std::to_string(n));
  if (!r.integral && (!(r.edge_min > 0.0) || r.edge_max < r.edge_min || !(r.weight_min > 0.0) ||
                      r.weight_max < r.weight_min || !(r.param_min > 0.0) || r.param_max < r.param_min)) {
    throw std::invalid_argument("generator ranges must be positive and ordered");
  }
  RawInstance raw;
  raw.positions.reserve(static_cast<std::size_t>(n));
  raw.weights.reserve(static_cast<std::size_t>(n));
  double x = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i > 0) x += r.integral ? small_int(rng, 1, 4) : uniform(rng, r.edge_min, r.edge_max);
    raw.positions.push_back(x);
    raw.weights.push_back(r.integral ? small_int(rng, 1, 4) : uniform(rng, r.weight_min, r.weight_max));
  }
  raw.capacity = r.integral ? small_int(rng, 1, 2) : uniform(rng, r.param_min, r.param_max);
  raw.tau = r.integral ? small_int(rng, 1, 2) : uniform(rng, r.param_min, r.param_max);
  return raw;
}

RawInstance generate_instance(int n, std::uint64_t seed, const GenRanges& ranges) {
  std::mt19937_64 rng(seed);
  return generate_instance(n, rng, ranges);
}

}  // namespace dynsink
