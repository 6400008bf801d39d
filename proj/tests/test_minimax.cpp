#include <gtest/gtest.h>

#include <random>

#include "dynsink/minimax.hpp"
#include "dynsink/oracle.hpp"
#include "test_util.hpp"

using namespace dynsink;
using dynsink::testing::instance_a;
using dynsink::testing::make_network;
using dynsink::testing::random_int;
using dynsink::testing::random_network;

TEST(LocateInCell, Examples) {
  const DynamicPathNetwork net = instance_a();
  // Interval [2, 3], cell 2: L(2,2)=0, R(2,3)=3, L(2,3)=4, R(3,3)=0.
  const auto inner = locate_in_cell(net, 2, 0.0, 3.0, 4.0, 0.0);
  ASSERT_TRUE(inner);
  EXPECT_DOUBLE_EQ(inner->sink, 1.5);
  EXPECT_DOUBLE_EQ(inner->cost, 2.5);
  // Interval [1, 3], cell 2: alpha* = 0 snaps to v_2.
  const auto edge = locate_in_cell(net, 2, 2.0, 3.0, 5.0, 0.0);
  ASSERT_TRUE(edge);
  EXPECT_EQ(edge->sink, 1.0);
  EXPECT_EQ(edge->cost, 3.0);
  // Orientation not satisfied.
  EXPECT_FALSE(locate_in_cell(net, 1, 4.0, 3.0, 5.0, 0.0));
  EXPECT_FALSE(locate_in_cell(net, 1, 0.0, 4.0, 2.0, 3.0));
}

TEST(LocateInCell, ClampsOutsideTheCell) {
  const DynamicPathNetwork net = make_network({0, 1}, {1, 1});
  // alpha* < 0: the left endpoint already balances.
  const CellSolution lo = balance_in_cell(net, 1, 1.0, 5.0);
  EXPECT_EQ(lo.sink, 0.0);
  EXPECT_EQ(lo.cost, 1.0);
  // alpha* > 1.
  const CellSolution hi = balance_in_cell(net, 1, 5.0, 1.0);
  EXPECT_EQ(hi.sink, 1.0);
  EXPECT_EQ(hi.cost, 1.0);
}

TEST(OneSinkInterval, Examples) {
  const DynamicPathNetwork net = instance_a();
  const OneSinkResult whole = one_sink_interval(net, 1, 3);
  EXPECT_EQ(whole.sink, 1.0);
  EXPECT_EQ(whole.cost, 3.0);
  EXPECT_EQ(whole.cell, 2);
  const OneSinkResult left = one_sink_interval(net, 1, 2);
  EXPECT_EQ(left.sink, 1.0);
  EXPECT_EQ(left.cost, 2.0);
  const OneSinkResult right = one_sink_interval(net, 2, 3);
  EXPECT_DOUBLE_EQ(right.sink, 1.5);
  EXPECT_DOUBLE_EQ(right.cost, 2.5);
  const OneSinkResult single = one_sink_interval(net, 2, 2);
  EXPECT_EQ(single.sink, 1.0);
  EXPECT_EQ(single.cost, 0.0);
  EXPECT_THROW(one_sink_interval(net, 0, 2), std::out_of_range);
  EXPECT_THROW(one_sink_interval(net, 3, 2), std::out_of_range);
}

TEST(OneSinkScanner, ResumedScansMatchFreshOnes) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const DynamicPathNetwork net = random_network(rng, 1, 40);
    const int n = net.size();
    OneSinkScanner scanner(net, 1);
    while (true) {
      const OneSinkResult r = scanner.solve();
      const OneSinkResult fresh = one_sink_interval(net, scanner.origin(), scanner.end());
      ASSERT_EQ(r.sink, fresh.sink);
      ASSERT_EQ(r.cost, fresh.cost);
      const bool can_end = scanner.end() < n;
      const bool can_origin = scanner.origin() < scanner.end();
      if (!can_end && !can_origin) break;
      if (can_end && (!can_origin || rng() % 2 == 0)) {
        scanner.advance_end();
      } else {
        scanner.advance_origin();
      }
    }
  }
}

TEST(OneSinkInterval, MatchesOracle) {
  std::mt19937_64 rng(32);
  const Tolerance tol;
  for (int trial = 0; trial < 300; ++trial) {
    const DynamicPathNetwork net = random_network(rng, 1, 15);
    const int i = random_int(rng, 1, net.size());
    const int j = random_int(rng, i, net.size());
    const OneSinkResult r = one_sink_interval(net, i, j);
    const oracle::SinkValue ref = oracle::oracle_minimax_1sink(net, i, j);
    ASSERT_TRUE(tol.equal(r.cost, ref.cost)) << r.cost << " vs " << ref.cost;
    ASSERT_TRUE(tol.equal(r.cost, oracle::minimax_cost_at(net, i, j, r.sink)));
    ASSERT_GE(r.sink, net.position(i));
    ASSERT_LE(r.sink, net.position(j));
    if (r.cell < j) {
      ASSERT_GE(r.sink, net.position(r.cell));
      ASSERT_LE(r.sink, net.position(r.cell + 1));
    }
  }
}

TEST(MinimaxKSink, Examples) {
  const DynamicPathNetwork net = instance_a();
  const Placement one = minimax_k_sink(net, 1);
  EXPECT_EQ(one.cost, 3.0);
  EXPECT_EQ(one.sinks, (std::vector<double>{1.0}));
  EXPECT_TRUE(one.dividers.empty());

  const Placement two = minimax_k_sink(net, 2);
  EXPECT_EQ(two.cost, 2.0);
  EXPECT_EQ(two.sinks, (std::vector<double>{1.0, 3.0}));
  EXPECT_EQ(two.dividers, (std::vector<int>{2}));
  ASSERT_EQ(two.groups.size(), 2u);
  EXPECT_EQ(two.groups[0].cost, 2.0);
  EXPECT_EQ(two.groups[1].cost, 0.0);

  const Placement three = minimax_k_sink(net, 3);
  EXPECT_EQ(three.cost, 0.0);
  EXPECT_EQ(three.sinks, (std::vector<double>{0.0, 1.0, 3.0}));
  EXPECT_EQ(minimax_k_sink(net, 7).cost, 0.0);

  EXPECT_THROW(minimax_k_sink(net, 0), std::invalid_argument);
}

TEST(MinimaxKSink, SingleVertex) {
  const DynamicPathNetwork net = make_network({0}, {5});
  const Placement p = minimax_k_sink(net, 1);
  EXPECT_EQ(p.cost, 0.0);
  EXPECT_EQ(p.sinks, (std::vector<double>{0.0}));
}

TEST(MinimaxTable, RowsAndDividers) {
  const DynamicPathNetwork net = instance_a();
  const MinimaxTable t = minimax_table(net, 2);
  EXPECT_EQ(t.opt[1][1], 0.0);
  EXPECT_EQ(t.opt[1][2], 2.0);
  EXPECT_EQ(t.opt[1][3], 3.0);
  EXPECT_EQ(t.opt[2][3], 2.0);
  EXPECT_EQ(t.divider[2][3], 2);
  EXPECT_THROW(minimax_table(net, 3), std::invalid_argument);
}

TEST(EvaluateMinimax, Examples) {
  const DynamicPathNetwork net = instance_a();
  EXPECT_EQ(evaluate_minimax(net, minimax_k_sink(net, 2)), 2.0);
  Placement p;
  p.k = 2;
  p.sinks = {0.0, 3.0};
  p.dividers = {2};
  EXPECT_EQ(evaluate_minimax(net, p), 3.0);
  EXPECT_EQ(evaluate_minimax(net, all_vertex_placement(net, Objective::kMinimax)), 0.0);
  p.sinks = {2.0, 3.0};
  EXPECT_THROW(evaluate_minimax(net, p), std::invalid_argument);
}

TEST(MinimaxKSink, MatchesExhaustiveOracle) {
  std::mt19937_64 rng(33);
  const Tolerance tol;
  for (int trial = 0; trial < 1000; ++trial) {
    const DynamicPathNetwork net = random_network(rng, 1, 12);
    const int k = random_int(rng, 1, 4);
    const Placement p = minimax_k_sink(net, k);
    const Placement ref = oracle::oracle_minimax_k(net, k);
    ASSERT_TRUE(tol.equal(p.cost, ref.cost)) << "trial " << trial << ": " << p.cost << " vs " << ref.cost;
    ASSERT_TRUE(tol.equal(evaluate_minimax(net, p), p.cost));
    ASSERT_EQ(static_cast<int>(p.sinks.size()), std::min(k, net.size()));
    double worst = 0.0;
    for (const auto& g : p.groups) worst = std::max(worst, g.cost);
    ASSERT_EQ(worst, p.cost);
  }
}

TEST(MinimaxKSink, CountersArePerRow) {
  std::mt19937_64 rng(34);
  const DynamicPathNetwork net = random_network(rng, 200, 200);
  MinimaxCounters c;
  minimax_k_sink(net, 4, &c);
  ASSERT_EQ(c.rows.size(), 4u);
  for (int p = 0; p < 4; ++p) EXPECT_EQ(c.rows[static_cast<std::size_t>(p)].p, p + 1);
  EXPECT_EQ(c.rows[0].divider_steps, 0u);
  EXPECT_GT(c.cells_tested(), 0u);
  EXPECT_EQ(c.total(), c.cells_tested() + c.divider_steps() + c.merge_tests());
}
