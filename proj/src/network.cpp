#include "dynsink/network.hpp"

#include <algorithm>
#include <cmath>

namespace dynsink {

bool Tolerance::equal(double a, double b) const {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= std::max(abs, rel * scale);
}

bool Tolerance::less_equal(double a, double b) const {
  return a <= b || equal(a, b);
}

ValidationError::ValidationError(std::string field, long index, const std::string& what)
    : std::invalid_argument(what), field_(std::move(field)), index_(index) {}

PrefixWeights::PrefixWeights(const std::vector<double>& weights) {
  cumulative_.reserve(weights.size() + 1);
  double running = 0.0;
  for (double w : weights) {
    running += w;
    cumulative_.push_back(running);
  }
}

bool DynamicPathNetwork::operator==(const DynamicPathNetwork& other) const {
  return positions_ == other.positions_ && weights_ == other.weights_ &&
         capacity_ == other.capacity_ && tau_ == other.tau_;
}

namespace {

[[noreturn]] void reject(const std::string& field, long index, const std::string& reason) {
  std::string msg = field + ": " + reason;
  if (index >= 0) msg += " at index " + std::to_string(index);
  throw ValidationError(field, index, msg);
}

void require_positive_scalar(const std::string& field, double value) {
  if (!std::isfinite(value)) reject(field, -1, "non-finite value");
  if (value <= 0.0) reject(field, -1, "must be positive");
}

}  // namespace

DynamicPathNetwork validate_network(const RawInstance& raw) {
  if (raw.positions.empty()) reject("positions", -1, "empty vertex list");
  if (raw.weights.size() != raw.positions.size()) {
    reject("weights", static_cast<long>(std::min(raw.weights.size(), raw.positions.size())),
           "length differs from positions (" + std::to_string(raw.weights.size()) + " vs " +
               std::to_string(raw.positions.size()) + ")");
  }
  for (std::size_t i = 0; i < raw.positions.size(); ++i) {
    if (!std::isfinite(raw.positions[i])) reject("positions", static_cast<long>(i), "non-finite value");
    if (i > 0) {
      if (raw.positions[i] == raw.positions[i - 1]) {
        reject("positions", static_cast<long>(i), "zero-length edge");
      }
      if (raw.positions[i] < raw.positions[i - 1]) {
        reject("positions", static_cast<long>(i), "positions not increasing");
      }
    }
  }
  for (std::size_t i = 0; i < raw.weights.size(); ++i) {
    if (!std::isfinite(raw.weights[i])) reject("weights", static_cast<long>(i), "non-finite value");
    if (raw.weights[i] <= 0.0) reject("weights", static_cast<long>(i), "weight must be positive");
  }
  require_positive_scalar("capacity", raw.capacity);
  require_positive_scalar("tau", raw.tau);

  DynamicPathNetwork net;
  const double origin = raw.positions.front();
  net.positions_.reserve(raw.positions.size());
  for (std::size_t i = 0; i < raw.positions.size(); ++i) {
    const double p = raw.positions[i] - origin;
    // Translation can collapse nearly coincident vertices.
    if (i > 0 && p <= net.positions_.back()) {
      reject("positions", static_cast<long>(i), "zero-length edge after translation");
    }
    net.positions_.push_back(p);
  }
  net.weights_ = raw.weights;
  net.capacity_ = raw.capacity;
  net.tau_ = raw.tau;
  net.prefix_ = PrefixWeights(net.weights_);
  return net;
}

double interval_weight(const DynamicPathNetwork& net, int i, int j) {
  if (i < 1 || j > net.size() || i > j) {
    throw std::out_of_range("interval_weight: bad interval [" + std::to_string(i) + ", " +
                            std::to_string(j) + "] for n = " + std::to_string(net.size()));
  }
  return net.prefix().at(j) - net.prefix().at(i - 1);
}

}  // namespace dynsink
