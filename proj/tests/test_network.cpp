#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "dynsink/instance_io.hpp"
#include "dynsink/network.hpp"
#include "dynsink/placement.hpp"
#include "test_util.hpp"

using namespace dynsink;
using dynsink::testing::instance_a;
using dynsink::testing::make_network;

namespace {

std::string rejection(const RawInstance& raw) {
  try {
    validate_network(raw);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Validate, InstanceAIsAccepted) {
  const DynamicPathNetwork net = instance_a();
  EXPECT_EQ(net.size(), 3);
  EXPECT_EQ(net.positions(), (std::vector<double>{0, 1, 3}));
  EXPECT_EQ(net.weights(), (std::vector<double>{1, 2, 1}));
  EXPECT_EQ(net.capacity(), 1.0);
  EXPECT_EQ(net.tau(), 1.0);
  EXPECT_EQ(net.prefix().cumulative(), (std::vector<double>{0, 1, 3, 4}));
}

TEST(Validate, ZeroLengthEdgeNamesIndex) {
  const std::string msg = rejection({{0, 1, 1}, {1, 2, 1}, 1, 1});
  EXPECT_NE(msg.find("zero-length edge at index 2"), std::string::npos) << msg;
  try {
    validate_network({{0, 1, 1}, {1, 2, 1}, 1, 1});
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "positions");
    EXPECT_EQ(e.index(), 2);
  }
}

TEST(Validate, TranslatesToZero) {
  const DynamicPathNetwork net = make_network({5, 6, 8}, {1, 2, 1});
  EXPECT_EQ(net.positions(), (std::vector<double>{0, 1, 3}));
  EXPECT_EQ(net, instance_a());
}

TEST(Validate, RejectsEachKindOfBadInput) {
  const double inf = std::numeric_limits<double>::infinity();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_NE(rejection({{}, {}, 1, 1}).find("empty vertex list"), std::string::npos);
  EXPECT_NE(rejection({{0, 2, 1}, {1, 1, 1}, 1, 1}).find("not increasing at index 2"), std::string::npos);
  EXPECT_NE(rejection({{0, 1}, {1, 0}, 1, 1}).find("weights: weight must be positive at index 1"),
            std::string::npos);
  EXPECT_NE(rejection({{0, 1}, {1, -2}, 1, 1}).find("at index 1"), std::string::npos);
  EXPECT_NE(rejection({{0, 1}, {1, 1}, 0, 1}).find("capacity"), std::string::npos);
  EXPECT_NE(rejection({{0, 1}, {1, 1}, 1, -1}).find("tau"), std::string::npos);
  EXPECT_NE(rejection({{0, inf}, {1, 1}, 1, 1}).find("non-finite value at index 1"), std::string::npos);
  EXPECT_NE(rejection({{0, 1}, {nan, 1}, 1, 1}).find("weights: non-finite value at index 0"), std::string::npos);
  EXPECT_NE(rejection({{0, 1}, {1, 1}, nan, 1}).find("capacity"), std::string::npos);
  EXPECT_NE(rejection({{0, 1}, {1}, 1, 1}).find("weights"), std::string::npos);
}

TEST(Validate, SingleVertex) {
  const DynamicPathNetwork net = make_network({7}, {3});
  EXPECT_EQ(net.size(), 1);
  EXPECT_EQ(net.position(1), 0.0);
}

TEST(IntervalWeight, Examples) {
  const DynamicPathNetwork net = instance_a();
  EXPECT_EQ(interval_weight(net, 1, 3), 4.0);
  EXPECT_EQ(interval_weight(net, 2, 2), 2.0);
  EXPECT_EQ(interval_weight(net, 1, 1), 1.0);
  EXPECT_THROW(interval_weight(net, 0, 2), std::out_of_range);
  EXPECT_THROW(interval_weight(net, 2, 4), std::out_of_range);
  EXPECT_THROW(interval_weight(net, 3, 2), std::out_of_range);
}

TEST(IntervalWeight, TotalMatchesRawSum) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const DynamicPathNetwork net = dynsink::testing::random_network(rng, 1, 200);
    double raw = 0.0;
    for (double w : net.weights()) raw += w;
    const double total = interval_weight(net, 1, net.size());
    EXPECT_LE(std::abs(total - raw), net.size() * std::numeric_limits<double>::epsilon() * raw);
  }
}

TEST(Validate, IdempotentThroughSerialization) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const DynamicPathNetwork net = dynsink::testing::random_network(rng, 1, 50);
    const DynamicPathNetwork again = parse_instance(instance_to_json(net).dump());
    EXPECT_EQ(net, again);
    EXPECT_EQ(instance_digest(net), instance_digest(again));
  }
}

TEST(InstanceJson, RejectsUnknownKeysAndBadTypes) {
  EXPECT_THROW(parse_instance(R"({"positions":[0],"weights":[1],"capacity":1,"tau":1,"x":2})"), ValidationError);
  EXPECT_THROW(parse_instance(R"({"positions":[0],"weights":[1],"capacity":1})"), ValidationError);
  EXPECT_THROW(parse_instance(R"({"positions":[0,"a"],"weights":[1,1],"capacity":1,"tau":1})"), ValidationError);
  EXPECT_THROW(parse_instance(R"({"positions":[0],)"), ValidationError);
  EXPECT_THROW(parse_instance("[1,2]"), ValidationError);
  const DynamicPathNetwork net =
      parse_instance(R"({"positions":[0,1,3],"weights":[1,2,1],"capacity":1,"tau":1})");
  EXPECT_EQ(net, instance_a());
}

TEST(InstanceJson, DigestDistinguishesInstances) {
  EXPECT_EQ(instance_digest(instance_a()).size(), 16u);
  EXPECT_NE(instance_digest(instance_a()), instance_digest(make_network({0, 1, 3}, {1, 2, 2})));
}

TEST(Placement, GroupsFollowDividers) {
  const DynamicPathNetwork net = instance_a();
  const auto groups = placement_groups(net, {1.0, 3.0}, {2});
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(groups[0], (GroupRecord{1, 2, 1.0, 0.0}));
  EXPECT_EQ(groups[1], (GroupRecord{3, 3, 3.0, 0.0}));
}

TEST(Placement, RejectsMalformed) {
  const DynamicPathNetwork net = instance_a();
  EXPECT_THROW(placement_groups(net, {1.0}, {2}), std::invalid_argument);
  EXPECT_THROW(placement_groups(net, {1.0, 3.0}, {3}), std::invalid_argument);
  EXPECT_THROW(placement_groups(net, {1.0, 3.0}, {0}), std::invalid_argument);
  EXPECT_THROW(placement_groups(net, {0.0, 1.0, 3.0}, {2, 2}), std::invalid_argument);
  EXPECT_THROW(placement_groups(net, {1.5, 3.0}, {2}), std::invalid_argument);
  EXPECT_THROW(placement_groups(net, {}, {}), std::invalid_argument);
}

TEST(Placement, AllVertices) {
  const Placement p = all_vertex_placement(instance_a(), Objective::kMinisum);
  EXPECT_EQ(p.sinks, (std::vector<double>{0, 1, 3}));
  EXPECT_EQ(p.dividers, (std::vector<int>{1, 2}));
  EXPECT_EQ(p.cost, 0.0);
  EXPECT_EQ(p.objective, Objective::kMinisum);
}

TEST(Objective, ParseAndPrint) {
  EXPECT_EQ(parse_objective("minimax"), Objective::kMinimax);
  EXPECT_EQ(parse_objective("minisum"), Objective::kMinisum);
  EXPECT_FALSE(parse_objective("median"));
  EXPECT_EQ(to_string(Objective::kMinisum), "minisum");
}

TEST(Tolerance, RelativeAndAbsolute) {
  const Tolerance tol;
  EXPECT_TRUE(tol.equal(1e6, 1e6 + 1e-4));
  EXPECT_FALSE(tol.equal(1e6, 1e6 + 1e-2));
  EXPECT_TRUE(tol.less_equal(1.0, 1.0 + 1e-12));
  EXPECT_TRUE(tol.less_equal(1.0 + 1e-12, 1.0));
  EXPECT_FALSE(tol.less_equal(1.1, 1.0));
}
