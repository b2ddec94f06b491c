// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "chipletfp/cli.hpp"
#include "chipletfp/core_model.hpp"
#include "chipletfp/costrel.hpp"
#include "chipletfp/floorplan.hpp"
#include "chipletfp/io.hpp"
#include "chipletfp/partition.hpp"
#include "oracles.hpp"
#include "reference_partition.hpp"
#include "support.hpp"

using namespace chipletfp;
using namespace testing_support;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) detail = why;
    pass = pass && ok;
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome ac1_cost_model() {
  Outcome o;
  const auto t0 = Clock::now();
  CostParams p;
  p.d0 = 0.09;
  p.alpha_cluster = 10;
  const double y = die_yield(1.0, p);
  const oracle::hp ref = oracle::die_yield(oracle::hp(1), oracle::hp("0.09"), oracle::hp(10));
  const double rel = std::abs(static_cast<double>((oracle::hp(y) - ref) / ref));
  o.require(rel <= 1e-9, fmt("yield relative error %.3g", rel));
  double prev_y = 2.0, prev_c = -1.0;
  for (int i = 0; i < 100; ++i) {
    const double s = 4.0 * i / 99.0;
    const double yi = die_yield(s, p);
    const double ci = cost_per_yielded_area(s, p);
    o.require(yi < prev_y, fmt("yield not decreasing at s=%.4f", s));
    o.require(ci > prev_c, fmt("cost per area not increasing at s=%.4f", s));
    prev_y = yi;
    prev_c = ci;
  }
  const double t = seconds_since(t0);
  o.require(t < 1.0, fmt("runtime %.3f s", t));
  if (o.pass) o.detail = fmt("Y(1cm2) rel err %.2g, 100-point trends hold, %.4f s", rel, t);
  return o;
}

Outcome ac2_oracle_equivalence() {
  Outcome o;
  double worst_gap = 0.0, worst_time = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const FloorplanInstance in = random_instance(seed * 7919, 3);
    SolverConfig cfg = quick_config(seed);
    cfg.enforce = {false, false};
    const auto t0 = Clock::now();
    const SolveReport sa = solve_primary(in, cfg);
    const double t = seconds_since(t0);
    const SolveReport ex = solve_exact(in, cfg);
    const double gap = (sa.objective.total - ex.objective.total) / ex.objective.total;
    worst_gap = std::max(worst_gap, gap);
    worst_time = std::max(worst_time, t);
    o.require(gap <= 0.02, fmt("instance %.0f: SA %.6g vs exact %.6g", static_cast<double>(seed), sa.objective.total,
                               ex.objective.total));
    o.require(t < 5.0, fmt("instance %.0f took %.2f s", static_cast<double>(seed), t));
  }
  if (o.pass) o.detail = fmt("20 instances, worst gap %.3g%%, slowest SA %.3f s", 100 * worst_gap, worst_time);
  return o;
}

Outcome ac3_feasibility() {
  Outcome o;
  double slowest16 = 0.0;
  int runs = 0;
  for (const char* name : {"c8.json", "c16.json"}) {
    const FloorplanInstance in = load_instance(name);
    const bool big = in.size() == 16;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto t0 = Clock::now();
      try {
        const SolveReport r = solve_primary(in, quick_config(seed));
        const double t = seconds_since(t0);
        if (big) slowest16 = std::max(slowest16, t);
        const auto v = validate(in, r.placement);
        o.require(v.empty(), std::string(name) + fmt(" seed %.0f: %.0f violations", static_cast<double>(seed),
                                                       static_cast<double>(v.size())));
        if (big) o.require(t < 60.0, fmt("c16 seed %.0f took %.1f s", static_cast<double>(seed), t));
      } catch (const InfeasibleError&) {
        o.require(false, std::string(name) + fmt(" seed %.0f: no feasible solution", static_cast<double>(seed)));
      }
      ++runs;
    }
  }
  if (o.pass) o.detail = fmt("%.0f runs clean, slowest 16-chiplet run %.2f s", runs, slowest16);
  return o;
}

Outcome ac4_two_stage() {
  Outcome o;
  struct Bench {
    const char* instance;
    const char* workload;
  };
  std::ostringstream summary;
  for (const Bench b : {Bench{"c8.json", "c8_hotspot_workload.json"}, Bench{"c16.json", "c16_hotspot_workload.json"}}) {
    const FloorplanInstance in = load_instance(b.instance);
    const std::string wl_text = read_file(data_path(b.workload));
    double reduction_sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const SolverConfig cfg = quick_config(seed);
      const Workload wl = parse_workload(wl_text, derive_seed(seed, SeedStream::Workload));
      const FlowResult r = two_stage_flow(in, wl, cfg);
      const double stage1 = objective_perf(in, r.primary.placement, r.freq).total;
      const double stage2 = objective_perf(in, r.perf.placement, r.freq).total;
      o.require(stage2 <= stage1, std::string(b.instance) + fmt(" seed %.0f: stage 2 %.9g > stage 1 %.9g",
                                                                 static_cast<double>(seed), stage2, stage1));
      reduction_sum += (r.primary_com_cost - r.perf.objective.com_cost) / r.primary_com_cost;
    }
    const double mean = reduction_sum / 10.0;
    o.require(mean >= 0.10, std::string(b.instance) + fmt(" mean ComCost reduction %.2f%%", 100 * mean));
    summary << b.instance << " mean ComCost reduction " << fmt("%.2f%%", 100 * mean) << "; ";
  }
  if (o.pass) o.detail = summary.str() + "stage 2 <= stage 1 on all 20 runs";
  return o;
}

Outcome ac5_ablation() {
  Outcome o;
  const FloorplanInstance in = load_instance("hotspot.json");
  auto bump_hits = [](const std::vector<Violation>& vs) {
    int n = 0;
    for (const auto& v : vs) n += v.kind == Violation::Kind::BumpClearance;
    return n;
  };
  SolverConfig on = quick_config(1);
  SolverConfig off = on;
  off.enforce.bumps = false;
  const SolveReport constrained = solve_primary(in, on);
  const SolveReport free = solve_primary(in, off);
  o.require(bump_hits(free.violations) >= 1, "unconstrained run has no clearance violation");
  o.require(free.objective.hpwl <= constrained.objective.hpwl,
            fmt("unconstrained HPWL %.6g > constrained %.6g", free.objective.hpwl, constrained.objective.hpwl));
  o.require(constrained.violations.empty(), "constrained run has violations");
  on.exact_max_n = off.exact_max_n = 4;
  const double ex_on = solve_exact(in, on).objective.hpwl;
  const double ex_off = solve_exact(in, off).objective.hpwl;
  o.require(constrained.objective.hpwl == ex_on && free.objective.hpwl == ex_off,
            fmt("SA HPWL differs from exhaustive (%.6g / %.6g)", ex_on, ex_off));
  if (o.pass) {
    o.detail = fmt("HPWL %.0f with bumps, %.0f without (", constrained.objective.hpwl, free.objective.hpwl) +
               std::to_string(bump_hits(free.violations)) + " clearance violations)";
  }
  return o;
}

Outcome ac6_warpage() {
  Outcome o;
  Rng rng(6);
  double worst_ratio = 0.0;
  for (int draw = 0; draw < 1000; ++draw) {
    MaterialParams m;
    m.t = rng.uniform(0.1, 2.0);
    m.delta_alpha = rng.uniform(1e-6, 3e-5);
    m.delta_T = rng.uniform(1, 250);
    m.lambda = rng.uniform(0.5, 2.0);
    m.D = rng.uniform(0.5, 2.0);
    m.k = rng.uniform(1e-4, 5e-3);
    const double l = rng.uniform(100, 20000);
    o.require(warpage(0.0, l, m, WarpageMode::Exact) == 0.0 && warpage(0.0, l, m, WarpageMode::Quadratic) == 0.0,
              fmt("w(0) != 0 at draw %.0f", draw));
    double prev = 0.0;
    for (int i = 1; i <= 200; ++i) {
      const double x = l * (i / 200.0);
      const double w = warpage(x, l, m, WarpageMode::Quadratic);
      o.require(w >= prev, fmt("quadratic decreases at draw %.0f, x=%.6g", draw, x));
      prev = w;
    }
    const double l_small = std::min(l, 1.0 / m.k);
    for (int i = 0; i <= 20; ++i) {
      const double x = l_small * (i / 20.0);
      const double diff = std::abs(static_cast<double>(oracle::warpage_exact(oracle::hp(x), oracle::hp(l_small), m)) -
                                   warpage(x, l_small, m, WarpageMode::Quadratic));
      const double bound = warpage_quadratic_error_bound(x, l_small, m);
      o.require(diff <= bound * (1 + 1e-9) + 1e-15, fmt("series bound broken at draw %.0f, x=%.6g", draw, x));
      if (bound > 0) worst_ratio = std::max(worst_ratio, diff / bound);
    }
  }
  if (o.pass) o.detail = fmt("1000 draws, worst |exact-quad|/bound %.3f", worst_ratio);
  return o;
}

Outcome ac7_partition() {
  Outcome o;
  const HierNode t = parse_hierarchy(read_file(data_path("soc_tree.json")));
  std::vector<std::string> leaves;
  reference::leaves_of(t, leaves);
  o.require(leaves.size() == 14, "fixture does not have 14 leaves");
  const AreaBounds b = area_bounds(leaf_area_sum(t), {1.1, 5, 25});
  const auto pool = par_chiplet(t, b.a_min, b.a_max);
  std::vector<reference::Chiplet> ref;
  reference::par_chiplet(t, b.a_min, b.a_max, ref);
  o.require(pool.size() == ref.size(), "pool size differs from reference");
  for (std::size_t i = 0; i < std::min(pool.size(), ref.size()); ++i) {
    o.require(pool[i].name == ref[i].name && pool[i].area == ref[i].area && pool[i].combined == ref[i].combined &&
                  pool[i].undersized == ref[i].undersized && pool[i].provenance == ref[i].leaves,
              "entry " + std::to_string(i) + " differs from reference");
  }
  Rng rng(77);
  std::function<HierNode(int, const std::string&)> grow = [&](int depth, const std::string& name) {
    HierNode n{name, 0.0, "f", {}};
    if (depth == 0 || (depth < 3 && rng.uniform01() < 0.3)) {
      n.area = rng.uniform(1.0, 100.0);
      return n;
    }
    const int k = 2 + static_cast<int>(rng.index(4));
    for (int i = 0; i < k; ++i) {
      n.children.push_back(grow(depth - 1, name + "." + std::to_string(i)));
      n.area += n.children.back().area;
    }
    return n;
  };
  double worst = 0.0;
  int trees = 0;
  while (trees < 50) {
    const HierNode r = grow(4, "r");
    if (r.is_leaf()) continue;
    ++trees;
    double biggest = 0.0;
    std::function<void(const HierNode&)> scan = [&](const HierNode& n) {
      if (n.is_leaf()) biggest = std::max(biggest, n.area);
      for (const auto& c : n.children) scan(c);
    };
    scan(r);
    const double a_soc = leaf_area_sum(r);
    const int c_min = std::max(1, static_cast<int>(a_soc * 1.1 / biggest));
    const AreaBounds rb = area_bounds(a_soc, {1.1, c_min, c_min + 10});
    double sum = 0.0;
    for (const auto& e : par_chiplet(r, rb.a_min, rb.a_max)) sum += e.area;
    worst = std::max(worst, std::abs(sum - a_soc) / a_soc);
  }
  o.require(worst <= 1e-6, fmt("area conservation error %.3g", worst));
  if (o.pass) o.detail = std::to_string(pool.size()) + " entries match reference; 50 random trees, worst area error " +
                         fmt("%.2g", worst);
  return o;
}

Outcome ac8_determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "chipletfp_acceptance_ac8";
  fs::remove_all(root);
  auto run = [&](const std::string& sub, const std::string& threads) {
    std::vector<std::string> args{"chipletfp", "flow", data_path("c8.json"), data_path("c8_hotspot_workload.json"),
                                  "--seed", "11", "--threads", threads, "--out", (root / sub).string()};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  };
  o.require(run("serial1", "1") == kExitOk && run("serial2", "1") == kExitOk && run("parallel", "4") == kExitOk,
            "flow command failed");
  int compared = 0;
  if (o.pass) {
    for (const char* f : {"primary.json", "perf.json", "freq.csv", "comparison.json", "comparison.txt", "primary.svg",
                          "perf.svg"}) {
      const std::string a = read_file((root / "serial1" / f).string());
      o.require(a == read_file((root / "serial2" / f).string()), std::string(f) + " differs between runs");
      o.require(a == read_file((root / "parallel" / f).string()), std::string(f) + " differs serial vs parallel");
      ++compared;
    }
  }
  fs::remove_all(root);
  if (o.pass) o.detail = std::to_string(compared) + " report files byte-identical across 3 runs (threads 1, 1, 4)";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"AC1 cost-model fidelity", ac1_cost_model},     {"AC2 oracle equivalence", ac2_oracle_equivalence},
      {"AC3 feasibility", ac3_feasibility},            {"AC4 two-stage direction", ac4_two_stage},
      {"AC5 bump ablation direction", ac5_ablation},   {"AC6 warpage properties", ac6_warpage},
      {"AC7 partition correctness", ac7_partition},    {"AC8 determinism", ac8_determinism},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
