#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dynsink {

// Relative tolerance used when comparing costs and coordinates.
inline constexpr double kDefaultRelTolerance = 1e-9;

struct Tolerance {
  double rel = kDefaultRelTolerance;
  double abs = 1e-12;

  bool equal(double a, double b) const;
  // a <= b up to tolerance.
  bool less_equal(double a, double b) const;
};

/// Raised when an instance description violates the model. `field` names the
/// offending input key and `index` the 0-based element (or -1 for scalars).
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, long index, const std::string& what);

  const std::string& field() const { return field_; }
  long index() const { return index_; }

 private:
  std::string field_;
  long index_;
};

/// Thrown when an internal invariant of a solver is found broken at runtime.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Unvalidated instance as it comes from a file or a generator.
struct RawInstance {
  std::vector<double> positions;
  std::vector<double> weights;
  double capacity = 0.0;
  double tau = 0.0;
};

/// Cumulative supplies: at(i) = w_1 + ... + w_i, at(0) = 0.
class PrefixWeights {
 public:
  PrefixWeights() = default;
  explicit PrefixWeights(const std::vector<double>& weights);

  double at(int i) const { return cumulative_[static_cast<std::size_t>(i)]; }
  double total() const { return cumulative_.back(); }
  const std::vector<double>& cumulative() const { return cumulative_; }

 private:
  std::vector<double> cumulative_{0.0};
};

/// A validated dynamic path network. Vertices are 1-based: vertex i sits at
/// position(i), carries supply weight(i). Immutable after construction.
class DynamicPathNetwork {
 public:
  int size() const { return static_cast<int>(positions_.size()); }
  double capacity() const { return capacity_; }
  double tau() const { return tau_; }

  double position(int i) const { return positions_[static_cast<std::size_t>(i - 1)]; }
  double weight(int i) const { return weights_[static_cast<std::size_t>(i - 1)]; }

  const std::vector<double>& positions() const { return positions_; }
  const std::vector<double>& weights() const { return weights_; }
  const PrefixWeights& prefix() const { return prefix_; }

  // Supply of vertices i..n.
  double suffix_weight(int i) const { return prefix_.total() - prefix_.at(i - 1); }

  RawInstance raw() const { return {positions_, weights_, capacity_, tau_}; }

  bool operator==(const DynamicPathNetwork& other) const;

 private:
  friend DynamicPathNetwork validate_network(const RawInstance& raw);
  DynamicPathNetwork() = default;

  std::vector<double> positions_;
  std::vector<double> weights_;
  double capacity_ = 1.0;
  double tau_ = 1.0;
  PrefixWeights prefix_;
};

/// Checks `raw` against the model and returns the immutable network, with
/// coordinates translated so that the first vertex sits at 0.
DynamicPathNetwork validate_network(const RawInstance& raw);

/// Total supply of vertices i..j (1-based, inclusive) in O(1).
double interval_weight(const DynamicPathNetwork& net, int i, int j);

}  // namespace dynsink
