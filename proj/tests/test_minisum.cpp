#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "dynsink/minisum.hpp"
#include "dynsink/oracle.hpp"
#include "test_util.hpp"

using namespace dynsink;
using dynsink::testing::instance_a;
using dynsink::testing::make_network;
using dynsink::testing::random_int;
using dynsink::testing::random_network;

TEST(GroupArrivalCost, Examples) {
  const DynamicPathNetwork net = instance_a();
  EXPECT_EQ(group_arrival_cost(net, 1.0, 1.0), 1.5);
  EXPECT_EQ(group_arrival_cost(net, 0.0, 7.0), 0.0);
  EXPECT_EQ(group_arrival_cost(net, 3.0, 2.0), 10.5);
  EXPECT_THROW(group_arrival_cost(net, -1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(group_arrival_cost(net, 1.0, -1.0), std::invalid_argument);
}

TEST(Sweeps, InstanceA) {
  const DynamicPathNetwork net = instance_a();
  const SweepResult left = sweep_sum_left(net, 1, 3);
  EXPECT_EQ(left.sums, (std::vector<double>{0.0, 1.5, 10.5}));
  const SweepResult right = sweep_sum_right(net, 1, 3);
  EXPECT_EQ(right.sums, (std::vector<double>{7.5, 2.5, 0.0}));
}

TEST(Sweeps, SingleVertexAndFarApart) {
  const DynamicPathNetwork net = instance_a();
  EXPECT_EQ(sweep_sum_left(net, 2, 2).sums, (std::vector<double>{0.0}));
  EXPECT_EQ(sweep_sum_right(net, 2, 2).sums, (std::vector<double>{0.0}));
  const DynamicPathNetwork far = make_network({0, 10}, {1, 1});
  EXPECT_EQ(sweep_sum_left(far, 1, 2).sums, (std::vector<double>{0.0, 10.5}));
  EXPECT_EQ(sweep_sum_right(far, 1, 2).sums, (std::vector<double>{10.5, 0.0}));
  EXPECT_THROW(sweep_sum_left(net, 2, 1), std::out_of_range);
  EXPECT_THROW(sweep_sum_right(net, 1, 4), std::out_of_range);
}

TEST(Sweeps, MergeStateOnInstanceA) {
  const DynamicPathNetwork net = instance_a();
  SumSweep sweep(net, SweepDirection::kRightward, 1);
  sweep.absorb();
  sweep.absorb();
  ASSERT_EQ(sweep.state().clusters.size(), 1u);
  EXPECT_EQ(sweep.state().clusters[0].head, 2);
  EXPECT_EQ(sweep.state().clusters[0].mass, 3.0);
  EXPECT_EQ(sweep.test_counter(), 1u);
  EXPECT_NO_THROW(sweep.check_invariants());
  EXPECT_EQ(sweep.sum_at(3.0), 10.5);
  EXPECT_THROW(sweep.sum_at(0.5), std::invalid_argument);
}

TEST(Sweeps, MatchFluidOracleAndTestBound) {
  std::mt19937_64 rng(41);
  const Tolerance tol;
  for (int trial = 0; trial < 400; ++trial) {
    const DynamicPathNetwork net = random_network(rng, 1, 40);
    const int i = random_int(rng, 1, net.size());
    const int j = random_int(rng, i, net.size());
    const SweepResult left = sweep_sum_left(net, i, j);
    const SweepResult right = sweep_sum_right(net, i, j);
    const auto m = static_cast<std::uint64_t>(j - i + 1);
    ASSERT_LE(left.tests, 2 * (m - 1));
    ASSERT_LE(right.tests, 2 * (m - 1));
    for (int v = i; v <= j; ++v) {
      const auto idx = static_cast<std::size_t>(v - i);
      const double x = net.position(v);
      ASSERT_TRUE(tol.equal(left.sums[idx], oracle::fluid_group_sum(net, i, v, x)));
      ASSERT_TRUE(tol.equal(right.sums[idx], oracle::fluid_group_sum(net, v, j, x)));
    }
  }
}

TEST(Sweeps, InvariantsHoldAfterEveryAbsorb) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const DynamicPathNetwork net = random_network(rng, 1, 60);
    for (SweepDirection d : {SweepDirection::kRightward, SweepDirection::kLeftward}) {
      SumSweep sweep(net, d, d == SweepDirection::kRightward ? 1 : net.size());
      while (sweep.can_absorb()) {
        sweep.absorb();
        ASSERT_NO_THROW(sweep.check_invariants());
      }
    }
  }
}

TEST(OneSinkMinisum, Examples) {
  const DynamicPathNetwork net = instance_a();
  const MinisumOneSink whole = one_sink_minisum(net, 1, 3);
  EXPECT_EQ(whole.vertex, 2);
  EXPECT_EQ(whole.cost, 4.0);
  const MinisumOneSink left = one_sink_minisum(net, 1, 2);
  EXPECT_EQ(left.vertex, 2);
  EXPECT_EQ(left.cost, 1.5);
  const MinisumOneSink single = one_sink_minisum(net, 3, 3);
  EXPECT_EQ(single.vertex, 3);
  EXPECT_EQ(single.cost, 0.0);
  EXPECT_THROW(one_sink_minisum(net, 2, 4), std::out_of_range);
}

TEST(OneSinkMinisum, TiesGoToSmallestIndex) {
  const DynamicPathNetwork net = make_network({0, 1}, {1, 1});
  const MinisumOneSink r = one_sink_minisum(net, 1, 2);
  EXPECT_EQ(r.vertex, 1);
  EXPECT_EQ(r.cost, 1.5);
}

TEST(MongeWeight, Examples) {
  const DynamicPathNetwork net = instance_a();
  MongeWeightOracle o(net);
  EXPECT_EQ(monge_edge_weight(o, 1, 4), 4.0);
  EXPECT_EQ(monge_edge_weight(o, 1, 2), 0.0);
  EXPECT_EQ(monge_edge_weight(o, 2, 4), 2.5);
  EXPECT_EQ(o.query_counter(), 3u);
  EXPECT_EQ(monge_edge_weight(o, 1, 4), 4.0);
  EXPECT_EQ(o.query_counter(), 3u);
  EXPECT_EQ(o.lookups(), 4u);
  EXPECT_THROW(monge_edge_weight(o, 2, 2), std::out_of_range);
  EXPECT_THROW(monge_edge_weight(o, 1, 5), std::out_of_range);
}

TEST(MinisumKSink, Examples) {
  const DynamicPathNetwork net = instance_a();
  const Placement one = minisum_k_sink(net, 1);
  EXPECT_EQ(one.cost, 4.0);
  EXPECT_EQ(one.sinks, (std::vector<double>{1.0}));
  const Placement two = minisum_k_sink(net, 2);
  EXPECT_EQ(two.cost, 1.5);
  EXPECT_EQ(two.sinks, (std::vector<double>{1.0, 3.0}));
  EXPECT_EQ(two.dividers, (std::vector<int>{2}));
  EXPECT_EQ(minisum_k_sink(net, 3).cost, 0.0);
  EXPECT_THROW(minisum_k_sink(net, 0), std::invalid_argument);
}

TEST(EvaluateMinisum, Examples) {
  const DynamicPathNetwork net = instance_a();
  EXPECT_EQ(evaluate_minisum(net, minisum_k_sink(net, 2)), 1.5);
  Placement p;
  p.objective = Objective::kMinisum;
  p.k = 2;
  p.sinks = {0.0, 3.0};
  p.dividers = {1};
  EXPECT_EQ(evaluate_minisum(net, p), 6.0);
  EXPECT_EQ(evaluate_minisum(net, all_vertex_placement(net, Objective::kMinisum)), 0.0);
}

TEST(EvaluateMinisum, ArbitrarySinkMatchesFluid) {
  std::mt19937_64 rng(43);
  const Tolerance tol;
  for (int trial = 0; trial < 300; ++trial) {
    const DynamicPathNetwork net = random_network(rng, 1, 20);
    const int i = random_int(rng, 1, net.size());
    const int j = random_int(rng, i, net.size());
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double x = net.position(i) + u * (net.position(j) - net.position(i));
    ASSERT_TRUE(tol.equal(minisum_group_cost(net, i, j, x), oracle::fluid_group_sum(net, i, j, x)));
  }
}

TEST(MinisumKSink, MatchesExhaustiveOracle) {
  std::mt19937_64 rng(44);
  const Tolerance tol;
  for (int trial = 0; trial < 1000; ++trial) {
    const DynamicPathNetwork net = random_network(rng, 1, 10);
    const int k = random_int(rng, 1, 4);
    const Placement p = minisum_k_sink(net, k);
    const Placement ref = oracle::oracle_minisum_k(net, k);
    ASSERT_TRUE(tol.equal(p.cost, ref.cost)) << "trial " << trial << ": " << p.cost << " vs " << ref.cost;
    ASSERT_TRUE(tol.equal(evaluate_minisum(net, p), p.cost));
  }
}

TEST(MinisumKSink, LookupsPerLayerGrowLikeNLogN) {
  std::vector<double> ratios;
  for (int n : {100, 200, 400}) {
    const DynamicPathNetwork net = validate_network(generate_instance(n, 5));
    MinisumCounters c;
    minisum_k_sink(net, 3, &c);
    ASSERT_EQ(c.layer_lookups.size(), 3u);
    for (std::size_t p = 1; p < c.layer_lookups.size(); ++p) {
      ratios.push_back(static_cast<double>(c.layer_lookups[p]) / (n * std::log2(static_cast<double>(n))));
    }
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  EXPECT_LT(*hi / *lo, 2.0);
  EXPECT_LT(*hi, 2.0);
}
