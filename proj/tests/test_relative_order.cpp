#include <gtest/gtest.h>

#include "chipletfp/core_model.hpp"
#include "chipletfp/floorplan.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace chipletfp;
using namespace testing_support;

TEST(PairRelation, EncodingRoundTrip) {
  EXPECT_EQ(relation_from_pq(false, false), PairRelation::LeftOf);
  EXPECT_EQ(relation_from_pq(false, true), PairRelation::Below);
  EXPECT_EQ(relation_from_pq(true, false), PairRelation::RightOf);
  EXPECT_EQ(relation_from_pq(true, true), PairRelation::Above);
  for (int v = 0; v < 4; ++v) {
    const auto r = static_cast<PairRelation>(v);
    const auto [p, q] = to_pq(r);
    EXPECT_EQ(relation_from_pq(p, q), r);
    EXPECT_EQ(inverse(inverse(r)), r);
    EXPECT_NE(inverse(r), r);
  }
}

TEST(RelativeOrder, RelationIsAntisymmetric) {
  RelativeOrder o(4);
  o.set_relation(2, 1, PairRelation::Above);
  EXPECT_EQ(o.relation(2, 1), PairRelation::Above);
  EXPECT_EQ(o.relation(1, 2), PairRelation::Below);
  EXPECT_EQ(o.relation(0, 3), PairRelation::LeftOf);
  EXPECT_EQ(o.relation(3, 0), PairRelation::RightOf);
  EXPECT_EQ(o.pair_count(), 6u);
}

TEST(Realize, RowAndStack) {
  const std::vector<ChipletDef> chips{chiplet(0, 10, 20), chiplet(1, 30, 5), chiplet(2, 7, 7)};
  RelativeOrder row(3);
  const auto p = try_realize(row, chips);
  ASSERT_TRUE(p);
  EXPECT_EQ((*p)[0].x, 0);
  EXPECT_EQ((*p)[1].x, 10);
  EXPECT_EQ((*p)[2].x, 40);
  for (const auto& c : *p) EXPECT_EQ(c.y, 0);

  RelativeOrder stack(3);
  stack.set_relation(0, 1, PairRelation::Below);
  stack.set_relation(0, 2, PairRelation::Below);
  stack.set_relation(1, 2, PairRelation::Below);
  stack.set_rotated(1, true);
  const auto s = try_realize(stack, chips);
  ASSERT_TRUE(s);
  EXPECT_EQ((*s)[1].y, 20);
  EXPECT_EQ((*s)[1].width, 5);
  EXPECT_EQ((*s)[2].y, 50);
  EXPECT_EQ(package_area(*s), 10 * 57);
}

TEST(Realize, CycleYieldsNothing) {
  const std::vector<ChipletDef> chips{chiplet(0, 1, 1), chiplet(1, 1, 1), chiplet(2, 1, 1)};
  RelativeOrder o(3);
  o.set_relation(0, 1, PairRelation::LeftOf);
  o.set_relation(1, 2, PairRelation::LeftOf);
  o.set_relation(0, 2, PairRelation::RightOf);
  EXPECT_FALSE(try_realize(o, chips));
  const FloorplanInstance in = make_instance(chips, {}, 10, 10);
  EXPECT_THROW(realize(o, in), InputError);
  EXPECT_THROW(try_realize(RelativeOrder(2), chips), InputError);
}

TEST(Realize, AcyclicOrdersGiveDisjointCompactedPlacements) {
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.index(9));
    const FloorplanInstance in = random_instance(1000 + trial, n);
    const RelativeOrder o = random_acyclic_order(rng, n);
    const auto p = try_realize(o, in.chiplets);
    ASSERT_TRUE(p) << "trial " << trial;
    EXPECT_TRUE(oracle::relations_hold(o, *p));
    EXPECT_TRUE(oracle::interiors_disjoint(*p));
    double min_x = 1e300, min_y = 1e300;
    for (int k = 0; k < n; ++k) {
      min_x = std::min(min_x, (*p)[k].x);
      min_y = std::min(min_y, (*p)[k].y);
      EXPECT_EQ((*p)[k].rotated, o.rotated(k));
    }
    EXPECT_EQ(min_x, 0.0);
    EXPECT_EQ(min_y, 0.0);
  }
}

TEST(Realize, RandomOrdersEitherRealizeCleanlyOrAreCyclic) {
  Rng rng(12);
  int realized = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.index(6));
    const FloorplanInstance in = random_instance(2000 + trial, n);
    const RelativeOrder o = random_order(rng, n);
    if (const auto p = try_realize(o, in.chiplets)) {
      ++realized;
      EXPECT_TRUE(oracle::relations_hold(o, *p));
      EXPECT_TRUE(oracle::interiors_disjoint(*p));
    }
  }
  EXPECT_GT(realized, 0);
}

TEST(Realize, EveryChipletIsPushedAgainstAPredecessorOrTheAxis) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.index(7));
    const FloorplanInstance in = random_instance(3000 + trial, n);
    const RelativeOrder o = random_acyclic_order(rng, n);
    const Placement p = realize(o, in);
    for (int k = 0; k < n; ++k) {
      bool x_tight = p[k].x == 0.0;
      bool y_tight = p[k].y == 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        if (o.relation(j, k) == PairRelation::LeftOf && p[j].x + p[j].width == p[k].x) x_tight = true;
        if (o.relation(j, k) == PairRelation::Below && p[j].y + p[j].height == p[k].y) y_tight = true;
      }
      EXPECT_TRUE(x_tight && y_tight) << "trial " << trial << " chiplet " << k;
    }
  }
}

TEST(DeriveOrder, RecoversAnOrderThatReproducesThePlacement) {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.index(8));
    const FloorplanInstance in = random_instance(4000 + trial, n);
    const Placement p = realize(random_acyclic_order(rng, n), in);
    const RelativeOrder d = derive_order(p);
    EXPECT_TRUE(oracle::relations_hold(d, p));
    const Placement again = realize(d, in);
    EXPECT_LE(package_area(again), package_area(p) * (1 + 1e-12));
  }
}

TEST(DeriveOrder, OverlapThrows) {
  EXPECT_THROW(derive_order({{0, 0, false, 10, 10}, {5, 5, false, 10, 10}}), InputError);
}

TEST(SwapChiplets, ExchangesRolesAndKeepsAcyclicity) {
  Rng rng(55);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.index(8));
    const FloorplanInstance in = random_instance(5000 + trial, n);
    RelativeOrder o = random_acyclic_order(rng, n);
    const RelativeOrder before = o;
    const int a = static_cast<int>(rng.index(n));
    const int b = static_cast<int>(rng.index(n));
    o.swap_chiplets(a, b);
    EXPECT_TRUE(try_realize(o, in.chiplets));
    auto role = [&](int k) { return k == a ? b : (k == b ? a : k); };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) EXPECT_EQ(o.relation(i, j), before.relation(role(i), role(j)));
    o.swap_chiplets(a, b);
    EXPECT_EQ(o, before);
  }
}

TEST(ShelfOrder, WrapsRowsAtTheGivenWidth) {
  const std::vector<ChipletDef> chips{chiplet(0, 40, 10), chiplet(1, 40, 20), chiplet(2, 40, 10),
                                      chiplet(3, 30, 5)};
  const std::vector<int> seq{0, 1, 2, 3};
  const auto p = try_realize(shelf_order(chips, seq, 100), chips);
  ASSERT_TRUE(p);
  EXPECT_EQ((*p)[1].x, 40);
  EXPECT_EQ((*p)[2].y, 20);
  EXPECT_EQ((*p)[2].x, 0);
  EXPECT_EQ((*p)[3].x, 40);
  EXPECT_TRUE(oracle::interiors_disjoint(*p));
}
