#include <chrono>
#include <cmath>

#include "chipletfp/core_model.hpp"
#include "chipletfp/floorplan.hpp"
#include "evaluator.hpp"

namespace chipletfp {

SolveReport solve_exact(const FloorplanInstance& instance, const SolverConfig& cfg, const FrequencyMatrix* freq) {
  check_solver_config(cfg);
  check_instance(instance);
  const int n = static_cast<int>(instance.size());
  if (n > cfg.exact_max_n) {
    throw InputError("exact solver limited to " + std::to_string(cfg.exact_max_n) + " chiplets, instance has " +
                     std::to_string(n));
  }
  const auto t0 = std::chrono::steady_clock::now();
  detail::Evaluator eval(instance, freq, cfg.enforce);

  RelativeOrder order(n);
  const std::size_t pairs = order.pair_count();
  const std::uint64_t relation_codes = std::uint64_t{1} << (2 * pairs);
  const std::uint64_t rotation_codes = std::uint64_t{1} << n;

  std::optional<detail::Evaluation> best_eval;
  Placement best_placement;
  RelativeOrder best_order;
  std::int64_t visited = 0;

  for (std::uint64_t code = 0; code < relation_codes; ++code) {
    // pair index p takes bits [2p, 2p+1]; pairs enumerate (0,1), (0,2), ..., (1,2), ...
    std::size_t p = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j, ++p) {
        order.set_relation(i, j, static_cast<PairRelation>((code >> (2 * p)) & 3u));
      }
    }
    for (std::uint64_t rot = 0; rot < rotation_codes; ++rot) {
      for (int k = 0; k < n; ++k) order.set_rotated(k, ((rot >> k) & 1u) != 0);
      ++visited;
      auto placed = try_realize(order, instance.chiplets);
      if (!placed) continue;
      const detail::Evaluation e = eval(*placed);
      if (!e.feasible) continue;
      if (!best_eval || detail::better(e, *placed, *best_eval, best_placement)) {
        best_eval = e;
        best_placement = std::move(*placed);
        best_order = order;
      }
    }
  }

  if (!best_eval) {
    SolveReport diag;
    diag.stage = "exact";
    diag.seed = cfg.seed;
    diag.iterations = visited;
    throw InfeasibleError("no feasible relative order exists for this instance", std::move(diag));
  }
  SolveReport r;
  r.stage = "exact";
  r.placement = best_placement;
  r.order = best_order;
  r.objective = best_eval->obj;
  r.violations = validate(instance, best_placement);
  r.seed = cfg.seed;
  r.iterations = visited;
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace chipletfp
