#include "dynsink/cluster_structures.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dynsink {

namespace {

std::string format_line(int head, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%d %.17g\n", head, value);
  return buf;
}

[[noreturn]] void broken(const char* what, int origin, int frontier) {
  throw InvariantViolation(std::string(what) + " (origin " + std::to_string(origin) + ", frontier " +
                           std::to_string(frontier) + ")");
}

}  // namespace

#ifdef DYNSINK_CHECK_INVARIANTS
#define DYNSINK_VERIFY() check_invariants()
#else
#define DYNSINK_VERIFY() ((void)0)
#endif

// ---------------------------------------------------------------------------
// Left

LeftClusterStructure::LeftClusterStructure(const DynamicPathNetwork& net, int origin)
    : net_(&net), origin_(origin), frontier_(origin) {
  if (origin < 1 || origin > net.size()) {
    throw std::out_of_range("left cluster structure: origin " + std::to_string(origin) + " out of range");
  }
}

double LeftClusterStructure::mass_between(int prev_head, int head) const {
  return net_->prefix().at(head) - net_->prefix().at(prev_head);
}

double LeftClusterStructure::query() const {
  if (clusters_.empty()) return 0.0;
  const Cluster& first = clusters_.front();
  return net_->tau() * (net_->position(frontier_) - net_->position(first.head)) + first.mass / net_->capacity();
}

void LeftClusterStructure::advance_origin() {
  if (origin_ >= frontier_) throw std::logic_error("advance_origin on an empty left structure");
  if (clusters_.front().head == origin_) {
    clusters_.pop_front();
  } else {
    clusters_.front().mass = mass_between(origin_, clusters_.front().head);
  }
  ++origin_;
  ++counters_.origin_advances;
  DYNSINK_VERIFY();
}

void LeftClusterStructure::advance_frontier() {
  if (frontier_ >= net_->size()) throw std::logic_error("advance_frontier past the last vertex");
  const double tau = net_->tau();
  const double c = net_->capacity();
  const int beta = frontier_;
  const int prev_head = clusters_.empty() ? origin_ - 1 : clusters_.back().head;
  clusters_.push_back({beta, mass_between(prev_head, beta)});
  // Merge the new cluster leftward while the stream ahead of it is blocked.
  while (clusters_.size() >= 2) {
    const Cluster last = clusters_.back();
    const Cluster& before = clusters_[clusters_.size() - 2];
    ++counters_.tests;
    if (tau * (net_->position(last.head) - net_->position(before.head)) <= last.mass / c) {
      clusters_.pop_back();
      clusters_.pop_back();
      const int base = clusters_.empty() ? origin_ - 1 : clusters_.back().head;
      clusters_.push_back({last.head, mass_between(base, last.head)});
    } else {
      break;
    }
  }
  ++frontier_;
  ++counters_.frontier_advances;
  DYNSINK_VERIFY();
}

void LeftClusterStructure::check_invariants() const {
  if (origin_ < 1 || frontier_ > net_->size() || origin_ > frontier_) broken("left: bad range", origin_, frontier_);
  if (origin_ == frontier_) {
    if (!clusters_.empty()) broken("left: empty interval with clusters", origin_, frontier_);
    return;
  }
  if (clusters_.empty()) broken("left: non-empty interval without clusters", origin_, frontier_);
  if (clusters_.back().head != frontier_ - 1) broken("left: last head is not frontier-1", origin_, frontier_);
  int prev = origin_ - 1;
  for (std::size_t i = 0; i < clusters_.size(); ++i) {
    const Cluster& cl = clusters_[i];
    if (cl.head <= prev) broken("left: heads not increasing", origin_, frontier_);
    if (cl.mass != mass_between(prev, cl.head) || !(cl.mass > 0.0)) broken("left: mass mismatch", origin_, frontier_);
    if (i > 0) {
      const double gap = net_->tau() * (net_->position(cl.head) - net_->position(clusters_[i - 1].head));
      if (!(gap > cl.mass / net_->capacity())) broken("left: adjacent clusters should have merged", origin_, frontier_);
    }
    prev = cl.head;
  }
}

std::string LeftClusterStructure::dump() const {
  std::string out;
  for (const Cluster& cl : clusters_) out += format_line(cl.head, cl.mass);
  return out;
}

bool LeftClusterStructure::operator==(const LeftClusterStructure& other) const {
  return origin_ == other.origin_ && frontier_ == other.frontier_ && clusters_ == other.clusters_;
}

// ---------------------------------------------------------------------------
// Right

RightClusterStructure::RightClusterStructure(const DynamicPathNetwork& net, int origin)
    : net_(&net), origin_(origin), frontier_(origin), offset_(0.0) {
  if (origin < 1 || origin > net.size()) {
    throw std::out_of_range("right cluster structure: origin " + std::to_string(origin) + " out of range");
  }
  offset_ = net.prefix().total() - net.prefix().at(origin);
}

double RightClusterStructure::query() const {
  if (clusters_.empty()) return 0.0;
  const Cluster& first = clusters_.front();
  return net_->tau() * (net_->position(first.head) - net_->position(origin_)) +
         (first.suffix_mass - offset_) / net_->capacity();
}

void RightClusterStructure::advance_origin() {
  if (origin_ >= frontier_) throw std::logic_error("advance_origin on an empty right structure");
  if (clusters_.front().head == origin_ + 1) clusters_.pop_front();
  ++origin_;
  ++counters_.origin_advances;
  DYNSINK_VERIFY();
}

void RightClusterStructure::advance_frontier() {
  if (frontier_ >= net_->size()) throw std::logic_error("advance_frontier past the last vertex");
  const double tau = net_->tau();
  const double c = net_->capacity();
  const int gamma = frontier_ + 1;
  offset_ = net_->prefix().total() - net_->prefix().at(gamma);
  const double candidate = tau * net_->position(gamma) + net_->weight(gamma) / c;
  // Drop heads the new vertex dominates (ties favour the new, larger index).
  while (!clusters_.empty()) {
    const Cluster& last = clusters_.back();
    ++counters_.tests;
    if (candidate >= tau * net_->position(last.head) + (last.suffix_mass - offset_) / c) {
      clusters_.pop_back();
    } else {
      break;
    }
  }
  clusters_.push_back({gamma, net_->suffix_weight(gamma)});
  frontier_ = gamma;
  ++counters_.frontier_advances;
  DYNSINK_VERIFY();
}

void RightClusterStructure::check_invariants() const {
  if (origin_ < 1 || frontier_ > net_->size() || origin_ > frontier_) broken("right: bad range", origin_, frontier_);
  if (offset_ != net_->prefix().total() - net_->prefix().at(frontier_)) broken("right: offset mismatch", origin_, frontier_);
  if (origin_ == frontier_) {
    if (!clusters_.empty()) broken("right: empty interval with clusters", origin_, frontier_);
    return;
  }
  if (clusters_.empty()) broken("right: non-empty interval without clusters", origin_, frontier_);
  if (clusters_.back().head != frontier_) broken("right: last head is not the frontier", origin_, frontier_);
  const double tau = net_->tau();
  const double c = net_->capacity();
  int prev = origin_;
  for (std::size_t i = 0; i < clusters_.size(); ++i) {
    const Cluster& cl = clusters_[i];
    if (cl.head <= prev) broken("right: heads not increasing", origin_, frontier_);
    if (cl.suffix_mass != net_->suffix_weight(cl.head)) broken("right: suffix mass mismatch", origin_, frontier_);
    if (i > 0) {
      const Cluster& before = clusters_[i - 1];
      if (!(cl.suffix_mass < before.suffix_mass)) broken("right: suffix masses not decreasing", origin_, frontier_);
      const double g_before = tau * net_->position(before.head) + (before.suffix_mass - offset_) / c;
      const double g_here = tau * net_->position(cl.head) + (cl.suffix_mass - offset_) / c;
      if (!(g_here < g_before)) broken("right: chain is not strictly dominated", origin_, frontier_);
    }
    prev = cl.head;
  }
}

std::string RightClusterStructure::dump() const {
  std::string out;
  for (const Cluster& cl : clusters_) out += format_line(cl.head, cl.suffix_mass);
  return out;
}

bool RightClusterStructure::operator==(const RightClusterStructure& other) const {
  return origin_ == other.origin_ && frontier_ == other.frontier_ && offset_ == other.offset_ &&
         clusters_ == other.clusters_;
}

// ---------------------------------------------------------------------------

LeftClusterStructure build_left(const DynamicPathNetwork& net, int alpha, int beta) {
  if (alpha < 1 || beta > net.size() || alpha > beta) {
    throw std::out_of_range("build_left: need 1 <= alpha <= beta <= n");
  }
  LeftClusterStructure s(net, alpha);
  for (int b = alpha; b < beta; ++b) s.advance_frontier();
  return s;
}

RightClusterStructure build_right(const DynamicPathNetwork& net, int beta, int gamma) {
  if (beta < 1 || gamma > net.size() || beta > gamma) {
    throw std::out_of_range("build_right: need 1 <= beta <= gamma <= n");
  }
  RightClusterStructure s(net, beta);
  for (int g = beta; g < gamma; ++g) s.advance_frontier();
  return s;
}

}  // namespace dynsink
