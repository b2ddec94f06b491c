#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

#include "chipletfp/core_model.hpp"
#include "chipletfp/floorplan.hpp"
#include "chipletfp/rng.hpp"
#include "evaluator.hpp"

namespace chipletfp {

using detail::Evaluation;
using detail::Evaluator;

void check_solver_config(const SolverConfig& cfg) {
  if (!(cfg.initial_temperature > 0.0) || !(cfg.perf_initial_temperature > 0.0)) {
    throw InputError("initial temperatures must be positive");
  }
  if (!(cfg.cooling_rate > 0.0 && cfg.cooling_rate < 1.0)) throw InputError("cooling_rate must lie in (0, 1)");
  if (cfg.temperature_steps < 1) throw InputError("temperature_steps must be >= 1");
  if (cfg.iterations_per_temperature < 0) throw InputError("iterations_per_temperature must be >= 0");
  if (cfg.restarts < 1) throw InputError("restarts must be >= 1");
  if (cfg.threads < 1) throw InputError("threads must be >= 1");
  const MoveProbabilities& m = cfg.moves;
  if (m.relation_flip < 0.0 || m.rotate < 0.0 || m.pair_swap < 0.0 ||
      std::abs(m.relation_flip + m.rotate + m.pair_swap - 1.0) > 1e-9) {
    throw InputError("move probabilities must be nonnegative and sum to 1");
  }
  if (!(cfg.penalty_out_of_bounds > 0.0) || !(cfg.penalty_warpage > 0.0) || !(cfg.penalty_bump > 0.0)) {
    throw InputError("penalty multipliers must be positive");
  }
  if (cfg.exact_max_n < 1) throw InputError("exact_max_n must be >= 1");
}

namespace {

struct Candidate {
  RelativeOrder order;
  Placement placement;
  Evaluation eval;
  double energy = 0.0;
};

struct RestartOutcome {
  std::optional<Candidate> best_feasible;
  Candidate best_energy;
  std::int64_t iterations = 0;
};

// Applies one random move in place; false if the result could not be realized.
bool perturb(RelativeOrder& order, Rng& rng, const MoveProbabilities& moves) {
  const int n = order.size();
  const double u = rng.uniform01();
  if (u < moves.relation_flip) {
    if (n < 2) return false;
    const int i = static_cast<int>(rng.index(n));
    const int j = static_cast<int>(rng.index(n - 1));
    const int jj = j >= i ? j + 1 : j;
    const auto current = static_cast<std::uint8_t>(order.relation(i, jj));
    const auto step = static_cast<std::uint8_t>(1 + rng.index(3));
    order.set_relation(i, jj, static_cast<PairRelation>((current + step) % 4));
  } else if (u < moves.relation_flip + moves.rotate) {
    const int k = static_cast<int>(rng.index(n));
    order.set_rotated(k, !order.rotated(k));
  } else {
    if (n < 2) return false;
    const int a = static_cast<int>(rng.index(n));
    const int b = static_cast<int>(rng.index(n - 1));
    order.swap_chiplets(a, b >= a ? b + 1 : b);
  }
  return true;
}

RestartOutcome anneal(const Evaluator& eval, const SolverConfig& cfg, const RelativeOrder& start,
                      std::optional<Candidate> incumbent, double start_temperature, std::uint64_t seed) {
  const FloorplanInstance& in = eval.instance();
  const int n = static_cast<int>(in.size());
  Rng rng(seed);

  Candidate current;
  current.order = start;
  current.placement = realize(start, in);
  current.eval = eval(current.placement);
  const double scale = std::max(1.0, std::abs(current.eval.obj.total));
  current.energy = eval.energy(current.eval, scale, cfg);

  RestartOutcome out;
  out.best_energy = current;
  if (incumbent) {
    incumbent->energy = eval.energy(incumbent->eval, scale, cfg);
    out.best_feasible = std::move(incumbent);
  }
  auto consider = [&](const Candidate& c) {
    if (c.eval.feasible &&
        (!out.best_feasible ||
         detail::better(c.eval, c.placement, out.best_feasible->eval, out.best_feasible->placement))) {
      out.best_feasible = c;
    }
    if (c.energy < out.best_energy.energy) out.best_energy = c;
  };
  consider(current);

  const int per_temp = cfg.iterations_per_temperature > 0 ? cfg.iterations_per_temperature : 20 * n;
  double temperature = start_temperature * scale;
  if (n < 2 && !(cfg.moves.rotate > 0.0)) return out;

  for (int step = 0; step < cfg.temperature_steps; ++step) {
    for (int it = 0; it < per_temp; ++it) {
      ++out.iterations;
      Candidate next;
      next.order = current.order;
      std::optional<Placement> placed;
      for (int attempt = 0; attempt < 8 && !placed; ++attempt) {
        next.order = current.order;
        if (perturb(next.order, rng, cfg.moves)) placed = try_realize(next.order, in.chiplets);
      }
      if (!placed) continue;
      next.placement = std::move(*placed);
      next.eval = eval(next.placement);
      next.energy = eval.energy(next.eval, scale, cfg);
      const double delta = next.energy - current.energy;
      if (delta <= 0.0 || rng.uniform01() < std::exp(-delta / temperature)) {
        current = std::move(next);
        consider(current);
      }
    }
    temperature *= cfg.cooling_rate;
  }
  return out;
}

SolveReport to_report(const FloorplanInstance& instance, const Candidate& c, const std::string& stage, const SolverConfig& cfg) {
  SolveReport r;
  r.stage = stage;
  r.placement = c.placement;
  r.order = c.order;
  r.violations = validate(instance, c.placement);
  r.objective = c.eval.obj;
  r.seed = cfg.seed;
  return r;
}

// Runs every restart (possibly on several threads) and reduces by (objective, restart index).
SolveReport run_restarts(const FloorplanInstance& instance, const SolverConfig& cfg, const FrequencyMatrix* freq,
                         const std::string& stage, const std::vector<RelativeOrder>& starts,
                         const std::optional<Candidate>& incumbent, double start_temperature) {
  const auto t0 = std::chrono::steady_clock::now();
  Evaluator eval(instance, freq, cfg.enforce);
  const std::size_t count = starts.size();
  std::vector<RestartOutcome> outcomes(count);
  std::vector<std::exception_ptr> errors(count);

  auto run_one = [&](std::size_t r) {
    try {
      outcomes[r] = anneal(eval, cfg, starts[r], incumbent, start_temperature,
                           derive_seed(cfg.seed, SeedStream::Anneal, r));
    } catch (...) {
      errors[r] = std::current_exception();
    }
  };
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.threads), count);
  if (workers <= 1) {
    for (std::size_t r = 0; r < count; ++r) run_one(r);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t r = w; r < count; r += workers) run_one(r);
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::int64_t iterations = 0;
  const Candidate* best = nullptr;
  const Candidate* best_infeasible = nullptr;
  for (const RestartOutcome& o : outcomes) {
    iterations += o.iterations;
    if (o.best_feasible &&
        (!best || detail::better(o.best_feasible->eval, o.best_feasible->placement, best->eval, best->placement))) {
      best = &*o.best_feasible;
    }
    if (!best_infeasible || o.best_energy.energy < best_infeasible->energy) best_infeasible = &o.best_energy;
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (best) {
    SolveReport r = to_report(instance, *best, stage, cfg);
    r.iterations = iterations;
    r.wall_time = elapsed;
    if (!enforced_only(r.violations, cfg.enforce).empty()) {
      throw Error("internal: solver feasibility disagrees with validate()");
    }
    return r;
  }
  SolveReport diag = to_report(instance, *best_infeasible, stage, cfg);
  diag.iterations = iterations;
  diag.wall_time = elapsed;
  throw InfeasibleError("no feasible " + stage + " floorplan found within the annealing budget", std::move(diag));
}

}  // namespace

SolveReport solve_primary(const FloorplanInstance& instance, const SolverConfig& cfg) {
  check_solver_config(cfg);
  check_instance(instance);
  const int n = static_cast<int>(instance.size());
  double total_area = 0.0;
  for (const ChipletDef& c : instance.chiplets) total_area += c.area();
  const double row_width = std::min(instance.board_w, 1.2 * std::sqrt(total_area));

  std::vector<RelativeOrder> starts;
  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<int> sequence(n);
    std::iota(sequence.begin(), sequence.end(), 0);
    if (r > 0) {
      Rng shuffle(derive_seed(cfg.seed, SeedStream::Anneal, 1000 + static_cast<std::uint64_t>(r)));
      for (int i = n - 1; i > 0; --i) std::swap(sequence[i], sequence[shuffle.index(static_cast<std::size_t>(i) + 1)]);
    }
    starts.push_back(shelf_order(instance.chiplets, sequence, row_width));
  }
  return run_restarts(instance, cfg, nullptr, "primary", starts, std::nullopt, cfg.initial_temperature);
}

SolveReport solve_perf(const FloorplanInstance& instance, const FrequencyMatrix& freq, const Placement& warm,
                       const RelativeOrder& warm_order, const SolverConfig& cfg) {
  check_solver_config(cfg);
  check_instance(instance);
  if (freq.size() != static_cast<int>(instance.size())) {
    throw InputError("frequency matrix dimension differs from chiplet count");
  }
  if (warm_order.size() != static_cast<int>(instance.size())) throw InputError("warm-start order has the wrong size");
  if (!try_realize(warm_order, instance.chiplets)) throw InputError("warm-start order is cyclic");
  if (!enforced_only(validate(instance, warm), cfg.enforce).empty()) {
    throw InputError("warm start is infeasible");
  }
  for (std::size_t k = 0; k < warm.size(); ++k) {
    const ChipletDef& d = instance.chiplets[k];
    const PlacedChiplet& p = warm[k];
    const bool dims_ok = p.rotated ? (p.width == d.height_o && p.height == d.width_o)
                                   : (p.width == d.width_o && p.height == d.height_o);
    if (!dims_ok) throw InputError("warm-start extents of chiplet " + std::to_string(k) + " do not match the instance");
  }

  Evaluator eval(instance, &freq, cfg.enforce);
  Candidate incumbent;
  incumbent.order = warm_order;
  incumbent.placement = warm;
  incumbent.eval = eval(warm);
  if (!incumbent.eval.feasible) throw InputError("warm start is infeasible");

  std::vector<RelativeOrder> starts(static_cast<std::size_t>(cfg.restarts), warm_order);
  return run_restarts(instance, cfg, &freq, "perf", starts, incumbent, cfg.perf_initial_temperature);
}

SolveReport solve_perf(const FloorplanInstance& instance, const FrequencyMatrix& freq, const Placement& warm,
                       const SolverConfig& cfg) {
  return solve_perf(instance, freq, warm, derive_order(warm), cfg);
}

}  // namespace chipletfp
