#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "chipletfp/core_model.hpp"
#include "chipletfp/floorplan.hpp"
#include "chipletfp/traffic.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace chipletfp;
using namespace testing_support;

namespace {

SolverConfig fast(std::uint64_t seed) {
  SolverConfig cfg = quick_config(seed);
  cfg.temperature_steps = 40;
  cfg.restarts = 2;
  return cfg;
}

double center_gap(const Placement& p, int a, int b) { return center_distance(p[a], p[b]); }

// Same instance with chiplet k renamed to perm[k].
FloorplanInstance relabel(const FloorplanInstance& in, const std::vector<int>& perm) {
  FloorplanInstance out = in;
  for (std::size_t k = 0; k < perm.size(); ++k) {
    out.chiplets[perm[k]] = in.chiplets[k];
    out.chiplets[perm[k]].id = perm[k];
  }
  for (auto& n : out.nets)
    for (int& e : n.endpoints) e = perm[e];
  return out;
}

}  // namespace

TEST(SolvePrimary, SingleChipletSitsAtOrigin) {
  const FloorplanInstance in = make_instance({chiplet(0, 300, 200)}, {}, 1000, 1000);
  const SolveReport r = solve_primary(in, fast(1));
  ASSERT_EQ(r.placement.size(), 1u);
  EXPECT_EQ(r.placement[0].x, 0);
  EXPECT_EQ(r.placement[0].y, 0);
  EXPECT_EQ(r.objective.package_area, 60000);
  EXPECT_TRUE(r.violations.empty());
}

TEST(SolvePrimary, TwoSquaresAbut) {
  const FloorplanInstance in = make_instance({chiplet(0, 400, 400), chiplet(1, 400, 400)}, {net(0, {0, 1})}, 2000, 2000);
  const SolveReport r = solve_primary(in, fast(4));
  EXPECT_EQ(r.objective.hpwl, 400);
  EXPECT_EQ(r.objective.package_area, 2 * 400 * 400);
  EXPECT_TRUE(oracle::interiors_disjoint(r.placement));
}

TEST(SolvePrimary, SameSeedSameAnswerAndThreadsDoNotMatter) {
  const FloorplanInstance in = load_instance("c8.json");
  SolverConfig cfg = fast(9);
  cfg.restarts = 4;
  const SolveReport a = solve_primary(in, cfg);
  const SolveReport b = solve_primary(in, cfg);
  cfg.threads = 4;
  const SolveReport c = solve_primary(in, cfg);
  EXPECT_EQ(a.order, b.order);
  EXPECT_EQ(a.order, c.order);
  EXPECT_EQ(a.objective.total, c.objective.total);
  EXPECT_EQ(a.iterations, c.iterations);
  for (std::size_t k = 0; k < a.placement.size(); ++k) {
    EXPECT_EQ(a.placement[k].x, c.placement[k].x);
    EXPECT_EQ(a.placement[k].y, c.placement[k].y);
  }
}

TEST(SolvePrimary, ResultIsFeasibleOnFixtures) {
  for (const char* name : {"c8.json", "c16.json"}) {
    const FloorplanInstance in = load_instance(name);
    const SolveReport r = solve_primary(in, fast(3));
    EXPECT_TRUE(r.violations.empty()) << name;
    EXPECT_TRUE(oracle::relations_hold(r.order, r.placement)) << name;
    EXPECT_EQ(r.stage, "primary");
  }
}

TEST(SolvePrimary, BoardTooSmallIsInfeasible) {
  const FloorplanInstance in = make_instance({chiplet(0, 600, 600), chiplet(1, 600, 600)}, {}, 1000, 1000);
  try {
    solve_primary(in, fast(1));
    FAIL() << "expected InfeasibleError";
  } catch (const InfeasibleError& e) {
    EXPECT_EQ(e.best().placement.size(), 2u);
    EXPECT_FALSE(e.best().violations.empty());
  }
  EXPECT_THROW(solve_exact(in, fast(1)), InfeasibleError);
}

TEST(SolvePrimary, RejectsBadConfig) {
  const FloorplanInstance in = make_instance({chiplet(0, 10, 10)}, {}, 100, 100);
  SolverConfig cfg = fast(1);
  cfg.cooling_rate = 1.0;
  EXPECT_THROW(solve_primary(in, cfg), InputError);
  cfg = fast(1);
  cfg.moves = {0.5, 0.5, 0.5};
  EXPECT_THROW(solve_primary(in, cfg), InputError);
  cfg = fast(1);
  cfg.restarts = 0;
  EXPECT_THROW(solve_primary(in, cfg), InputError);
}

TEST(SolveExact, TwoSquaresHpwlEqualsSide) {
  const FloorplanInstance in = make_instance({chiplet(0, 300, 300), chiplet(1, 300, 300)}, {net(0, {0, 1})}, 2000, 2000);
  const SolveReport r = solve_exact(in, fast(1));
  EXPECT_EQ(r.objective.hpwl, 300);
  EXPECT_EQ(r.stage, "exact");
  EXPECT_EQ(r.iterations, 4 * 4);
}

TEST(SolveExact, SizeLimit) {
  const FloorplanInstance in = random_instance(1, 4);
  EXPECT_THROW(solve_exact(in, fast(1)), InputError);
  SolverConfig cfg = fast(1);
  cfg.exact_max_n = 4;
  EXPECT_NO_THROW(solve_exact(in, cfg));
}

TEST(SolveExact, OptimumDoesNotDependOnLabels) {
  const std::vector<std::vector<int>> perms{{1, 2, 0}, {2, 0, 1}, {0, 2, 1}};
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const FloorplanInstance in = random_instance(seed, 3);
    const double base = solve_exact(in, fast(1)).objective.total;
    for (const auto& perm : perms) {
      const double other = solve_exact(relabel(in, perm), fast(1)).objective.total;
      EXPECT_NEAR(other, base, 1e-9 * base) << "seed " << seed;
    }
  }
}

TEST(SolveExact, BeatsEveryAcyclicOrderDrawnAtRandom) {
  const FloorplanInstance in = random_instance(77, 3);
  const double best = solve_exact(in, fast(1)).objective.total;
  Rng rng(5);
  for (int k = 0; k < 300; ++k) {
    const Placement p = realize(random_acyclic_order(rng, 3), in);
    if (!enforced_only(validate(in, p), SolverConfig{}.enforce).empty()) continue;
    EXPECT_LE(best, objective_primary(in, p).total * (1 + 1e-12));
  }
}

TEST(SolveExact, AnnealerMatchesOnSmallInstances) {
  for (std::uint64_t seed = 20; seed < 26; ++seed) {
    const FloorplanInstance in = random_instance(seed, 3);
    const double exact = solve_exact(in, fast(1)).objective.total;
    const double sa = solve_primary(in, fast(seed)).objective.total;
    EXPECT_LE(sa, exact * 1.02) << "seed " << seed;
    EXPECT_GE(sa, exact * (1 - 1e-12)) << "seed " << seed;
  }
}

TEST(SolveExact, PureWirelengthHotspotFixture) {
  FloorplanInstance in = load_instance("hotspot.json");
  SolverConfig cfg = fast(1);
  cfg.exact_max_n = 4;
  EXPECT_EQ(solve_exact(in, cfg).objective.hpwl, 3000);
  cfg.enforce.bumps = false;
  const SolveReport free = solve_exact(in, cfg);
  EXPECT_EQ(free.objective.hpwl, 2000);
  bool bump_hit = false;
  for (const auto& v : free.violations) bump_hit |= v.kind == Violation::Kind::BumpClearance;
  EXPECT_TRUE(bump_hit);
}

TEST(SolvePerf, NeverWorseThanWarmStart) {
  const FloorplanInstance in = load_instance("c8.json");
  const SolveReport prim = solve_primary(in, fast(2));
  WorkloadGenerator g;
  g.kind = WorkloadGenerator::Kind::Hotspot;
  g.total_packets = 20000;
  g.seed = 8;
  const auto sim = simulate(prim.placement, in.nets, {{}, g}, in.latency);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const SolveReport perf = solve_perf(in, sim.freq, prim.placement, prim.order, fast(seed));
    EXPECT_LE(perf.objective.total, objective_perf(in, prim.placement, sim.freq).total);
    EXPECT_TRUE(perf.violations.empty());
    EXPECT_EQ(perf.stage, "perf");
  }
}

TEST(SolvePerf, HeavyPairIsPulledTogether) {
  const FloorplanInstance in = load_instance("c8.json");
  const SolveReport prim = solve_primary(in, fast(6));
  int far_a = 0, far_b = 1;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j)
      if (center_gap(prim.placement, i, j) > center_gap(prim.placement, far_a, far_b)) {
        far_a = i;
        far_b = j;
      }
  FrequencyMatrix f(8);
  f.add(far_a, far_b, 1000000);
  const SolveReport perf = solve_perf(in, f, prim.placement, prim.order, fast(6));
  EXPECT_LT(center_gap(perf.placement, far_a, far_b), center_gap(prim.placement, far_a, far_b));
}

TEST(SolvePerf, RejectsBadWarmStarts) {
  const FloorplanInstance in = load_instance("c8.json");
  const SolveReport prim = solve_primary(in, fast(2));
  FrequencyMatrix f(8);
  EXPECT_THROW(solve_perf(in, FrequencyMatrix(3), prim.placement, prim.order, fast(1)), InputError);
  Placement shifted = prim.placement;
  for (auto& c : shifted) c.x += in.board_w;
  EXPECT_THROW(solve_perf(in, f, shifted, fast(1)), InputError);
  Placement overlapping = prim.placement;
  overlapping[1] = overlapping[0];
  overlapping[1].width = prim.placement[1].width;
  overlapping[1].height = prim.placement[1].height;
  EXPECT_THROW(solve_perf(in, f, overlapping, fast(1)), InputError);
}

TEST(TwoStageFlow, WiresStagesTogether) {
  const FloorplanInstance in = load_instance("c8.json");
  const Workload w = parse_workload(read_file(data_path("c8_hotspot_workload.json")), 5);
  const FlowResult r = two_stage_flow(in, w, fast(5));
  EXPECT_EQ(r.freq.total(), 40000);
  EXPECT_NEAR(r.primary_com_cost, com_cost(r.freq, r.primary.placement), 1e-9 * r.primary_com_cost);
  EXPECT_LE(r.perf.objective.total, objective_perf(in, r.primary.placement, r.freq).total);
  EXPECT_GT(r.primary_cycles, 0);
  EXPECT_GT(r.perf_cycles, 0);
}
