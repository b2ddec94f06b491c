#include <filesystem>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "chipletfp/cli.hpp"
#include "chipletfp/core_model.hpp"
#include "chipletfp/costrel.hpp"
#include "chipletfp/floorplan.hpp"
#include "chipletfp/io.hpp"
#include "chipletfp/partition.hpp"
#include "chipletfp/rng.hpp"
#include "chipletfp/svg.hpp"
#include "chipletfp/traffic.hpp"
#include "json.hpp"

namespace chipletfp {

namespace {

using ojson = nlohmann::ordered_json;

struct Common {
  std::optional<std::uint64_t> seed;
  std::string config;
  std::optional<int> threads;
};

SolverConfig load_config(const Common& c) {
  SolverConfig cfg = c.config.empty() ? SolverConfig{} : parse_solver_config(read_file(c.config));
  if (c.seed) cfg.seed = *c.seed;
  if (c.threads) cfg.threads = *c.threads;
  check_solver_config(cfg);
  return cfg;
}

std::uint64_t seed_of(const Common& c) { return c.seed.value_or(SolverConfig{}.seed); }

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file(path, content);
  }
}

void report_infeasible(const InfeasibleError& e, std::ostream& err) {
  err << "error: " << e.what() << '\n';
  const SolveReport& best = e.best();
  if (best.placement.empty()) return;
  err << "best infeasible candidate (objective " << best.objective.total << "):\n";
  for (const Violation& v : best.violations) err << "  " << to_string(v.kind) << ": " << v.detail << '\n';
}

std::string violations_json(const std::vector<Violation>& vs) {
  ojson arr = ojson::array();
  for (const Violation& v : vs) {
    arr.push_back({{"kind", to_string(v.kind)},
                   {"first", v.first},
                   {"second", v.second},
                   {"magnitude", v.magnitude},
                   {"detail", v.detail}});
  }
  ojson j = {{"version", kDocumentVersion}, {"feasible", vs.empty()}, {"violations", arr}};
  return j.dump(2) + "\n";
}

SvgScene scene_of(const SolutionDocument& s, const FrequencyMatrix* freq) {
  return {s.board_w, s.board_h, s.names, s.placement, s.bumps, freq};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chiplet partitioning and 2.5D interposer floorplanning"};
  app.name("chipletfp");
  app.require_subcommand(1);
  std::function<int()> action;

  Common common;
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "Master seed for every random draw");
  };
  auto add_solver = [&](CLI::App* sub) {
    add_seed(sub);
    sub->add_option("--config", common.config, "Solver configuration (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--threads", common.threads, "Worker threads for annealing restarts")->check(CLI::PositiveNumber);
  };

  // partition
  std::string tree_path, out_path;
  PartitionConfig pcfg;
  AspectRange aspect;
  auto* partition = app.add_subcommand("partition", "Extract a chiplet pool from an SoC hierarchy");
  partition->add_option("tree", tree_path, "Hierarchy document (JSON)")->required()->check(CLI::ExistingFile);
  partition->add_option("--rr", pcfg.rr, "Relaxation ratio");
  partition->add_option("--c-min", pcfg.c_min, "Minimum chiplet count");
  partition->add_option("--c-max", pcfg.c_max, "Maximum chiplet count");
  partition->add_option("--rho-min", aspect.rho_min, "Smallest aspect ratio w/h");
  partition->add_option("--rho-max", aspect.rho_max, "Largest aspect ratio w/h");
  partition->add_option("--out", out_path, "Pool document (default stdout)");
  add_seed(partition);
  partition->callback([&] {
    action = [&] {
      const HierNode tree = parse_hierarchy(read_file(tree_path));
      PoolDocument pool;
      pool.a_soc = leaf_area_sum(tree);
      pool.bounds = area_bounds(pool.a_soc, pcfg);
      pool.entries = par_chiplet(tree, pool.bounds.a_min, pool.bounds.a_max);
      pool.chiplets = realize_dimensions(pool.entries, aspect, derive_seed(seed_of(common), SeedStream::Aspect));
      emit(out_path, write_pool(pool), out);
      return kExitOk;
    };
  });

  // floorplan
  std::string instance_path, stage = "primary", svg_path, warm_path, freq_path, workload_path;
  auto* floorplan = app.add_subcommand("floorplan", "Place the chiplets of an instance");
  floorplan->add_option("instance", instance_path, "Instance document (JSON)")->required()->check(CLI::ExistingFile);
  floorplan->add_option("--stage", stage, "primary, perf or exact")
      ->check(CLI::IsMember({"primary", "perf", "exact"}));
  floorplan->add_option("--warm", warm_path, "Warm-start solution for --stage perf")->check(CLI::ExistingFile);
  floorplan->add_option("--freq", freq_path, "Frequency matrix (CSV)")->check(CLI::ExistingFile);
  floorplan->add_option("--workload", workload_path, "Workload simulated at the warm start to obtain F")
      ->check(CLI::ExistingFile);
  floorplan->add_option("--out", out_path, "Solution document (default stdout)");
  floorplan->add_option("--svg", svg_path, "SVG rendering of the solution");
  add_solver(floorplan);
  floorplan->callback([&] {
    action = [&]() -> int {
      const FloorplanInstance in = parse_instance(read_file(instance_path));
      const SolverConfig cfg = load_config(common);
      std::optional<FrequencyMatrix> freq;
      if (!freq_path.empty()) freq = parse_frequency_csv(read_file(freq_path));
      SolveReport report;
      try {
        if (stage == "primary") {
          report = solve_primary(in, cfg);
        } else if (stage == "exact") {
          report = solve_exact(in, cfg, freq ? &*freq : nullptr);
        } else {
          if (warm_path.empty()) throw InputError("--stage perf needs --warm");
          const SolutionDocument warm = parse_solution(read_file(warm_path));
          check_solution_matches(in, warm);
          if (!freq) {
            if (workload_path.empty()) throw InputError("--stage perf needs --freq or --workload");
            const Workload wl = parse_workload(read_file(workload_path), derive_seed(cfg.seed, SeedStream::Workload));
            freq = simulate(warm.placement, in.nets, wl, in.latency).freq;
          }
          report = warm.order ? solve_perf(in, *freq, warm.placement, *warm.order, cfg)
                              : solve_perf(in, *freq, warm.placement, cfg);
        }
      } catch (const InfeasibleError& e) {
        report_infeasible(e, err);
        return kExitInfeasible;
      }
      const SolutionDocument doc = make_solution(in, report);
      emit(out_path, write_solution(doc), out);
      if (!svg_path.empty()) write_file(svg_path, render_svg(scene_of(doc, freq ? &*freq : nullptr)));
      return kExitOk;
    };
  });

  // simulate
  std::string solution_path;
  auto* sim = app.add_subcommand("simulate", "Count packets and model cycles for a placed solution");
  sim->add_option("instance", instance_path, "Instance document (JSON)")->required()->check(CLI::ExistingFile);
  sim->add_option("solution", solution_path, "Solution document (JSON)")->required()->check(CLI::ExistingFile);
  sim->add_option("workload", workload_path, "Workload document (JSON)")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", out_path, "Frequency matrix CSV (default stdout)");
  add_seed(sim);
  sim->callback([&] {
    action = [&] {
      const FloorplanInstance in = parse_instance(read_file(instance_path));
      const SolutionDocument sol = parse_solution(read_file(solution_path));
      check_solution_matches(in, sol);
      const Workload wl = parse_workload(read_file(workload_path), derive_seed(seed_of(common), SeedStream::Workload));
      const SimulationResult r = simulate(sol.placement, in.nets, wl, in.latency);
      emit(out_path, write_frequency_csv(r.freq), out);
      err << "packets " << r.freq.total() << ", model cycles " << r.total_cycles << ", com_cost "
          << com_cost(r.freq, sol.placement) << '\n';
      return kExitOk;
    };
  });

  // cost
  bool taylor = false;
  auto* cost = app.add_subcommand("cost", "Itemized 2.5D package cost of a placed solution");
  cost->add_option("instance", instance_path, "Instance document (JSON)")->required()->check(CLI::ExistingFile);
  cost->add_option("solution", solution_path, "Solution document (JSON)")->required()->check(CLI::ExistingFile);
  cost->add_flag("--taylor", taylor, "Second-order expansion of the per-area cost");
  cost->add_option("--out", out_path, "Cost document (default stdout)");
  cost->callback([&] {
    action = [&] {
      const FloorplanInstance in = parse_instance(read_file(instance_path));
      const SolutionDocument sol = parse_solution(read_file(solution_path));
      check_solution_matches(in, sol);
      const CostReport r = cost_details(in, sol.placement, taylor ? CostMode::Taylor : CostMode::Exact);
      ojson chips = ojson::array();
      for (std::size_t k = 0; k < r.chiplets.size(); ++k) {
        const ChipletCost& c = r.chiplets[k];
        chips.push_back({{"id", k}, {"area_cm2", c.area_cm2}, {"yield", c.yield}, {"raw_cost", c.raw_cost},
                         {"bond_cost", c.bond_cost}});
      }
      ojson j = {{"version", kDocumentVersion},      {"mode", taylor ? "taylor" : "exact"},
                 {"package_area_cm2", r.package_area_cm2}, {"c_inter", r.c_inter},
                 {"assembly_cost", r.assembly_cost},  {"total", r.total},
                 {"chiplets", chips}};
      emit(out_path, j.dump(2) + "\n", out);
      return kExitOk;
    };
  });

  // validate
  auto* val = app.add_subcommand("validate", "List every constraint violation of a placed solution");
  val->add_option("instance", instance_path, "Instance document (JSON)")->required()->check(CLI::ExistingFile);
  val->add_option("solution", solution_path, "Solution document (JSON)")->required()->check(CLI::ExistingFile);
  val->add_option("--out", out_path, "Violation document (default stdout)");
  val->callback([&] {
    action = [&] {
      const FloorplanInstance in = parse_instance(read_file(instance_path));
      const SolutionDocument sol = parse_solution(read_file(solution_path));
      check_solution_matches(in, sol);
      const std::vector<Violation> vs = validate(in, sol.placement);
      emit(out_path, violations_json(vs), out);
      return vs.empty() ? kExitOk : kExitInput;
    };
  });

  // render
  auto* render = app.add_subcommand("render", "Draw a solution as SVG");
  render->add_option("solution", solution_path, "Solution document (JSON)")->required()->check(CLI::ExistingFile);
  render->add_option("--freq", freq_path, "Frequency matrix overlay (CSV)")->check(CLI::ExistingFile);
  render->add_option("--svg,--out", svg_path, "SVG file (default stdout)");
  render->callback([&] {
    action = [&] {
      const SolutionDocument sol = parse_solution(read_file(solution_path));
      std::optional<FrequencyMatrix> freq;
      if (!freq_path.empty()) freq = parse_frequency_csv(read_file(freq_path));
      emit(svg_path, render_svg(scene_of(sol, freq ? &*freq : nullptr)), out);
      return kExitOk;
    };
  });

  // flow
  auto* flow = app.add_subcommand("flow", "Primary floorplan, traffic simulation, performance-aware refinement");
  flow->add_option("instance", instance_path, "Instance document (JSON)")->required()->check(CLI::ExistingFile);
  flow->add_option("workload", workload_path, "Workload document (JSON)")->required()->check(CLI::ExistingFile);
  flow->add_option("--out", out_path, "Output directory")->required();
  add_solver(flow);
  flow->callback([&] {
    action = [&]() -> int {
      const FloorplanInstance in = parse_instance(read_file(instance_path));
      const SolverConfig cfg = load_config(common);
      const Workload wl = parse_workload(read_file(workload_path), derive_seed(cfg.seed, SeedStream::Workload));
      const std::filesystem::path dir(out_path);
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      if (ec) throw InputError("cannot create '" + out_path + "': " + ec.message());
      FlowResult r;
      try {
        r = two_stage_flow(in, wl, cfg);
      } catch (const InfeasibleError& e) {
        report_infeasible(e, err);
        if (!e.best().placement.empty()) {
          write_file((dir / "infeasible.json").string(), write_solution(make_solution(in, e.best())));
        }
        return kExitInfeasible;
      }
      const SolutionDocument primary = make_solution(in, r.primary);
      const SolutionDocument perf = make_solution(in, r.perf);
      const Comparison cmp = make_comparison(r);
      write_file((dir / "primary.json").string(), write_solution(primary));
      write_file((dir / "perf.json").string(), write_solution(perf));
      write_file((dir / "freq.csv").string(), write_frequency_csv(r.freq));
      write_file((dir / "primary.svg").string(), render_svg(scene_of(primary, &r.freq)));
      write_file((dir / "perf.svg").string(), render_svg(scene_of(perf, &r.freq)));
      write_file((dir / "comparison.json").string(), write_comparison(cmp));
      const std::string table = comparison_table(cmp);
      write_file((dir / "comparison.txt").string(), table);
      out << table;
      return kExitOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    return action ? action() : kExitInput;
  } catch (const InfeasibleError& e) {
    report_infeasible(e, err);
    return kExitInfeasible;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace chipletfp
