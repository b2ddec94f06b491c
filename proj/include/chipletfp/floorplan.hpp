#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chipletfp/traffic.hpp"
#include "chipletfp/types.hpp"

namespace chipletfp {

// Relation of chiplet i to chiplet j. The numeric value is the (p, q)
// indicator pair read as 2p + q:
//   (0,0) i left of j   (0,1) i below j   (1,0) i right of j   (1,1) i above j
enum class PairRelation : std::uint8_t { LeftOf = 0, Below = 1, RightOf = 2, Above = 3 };

PairRelation relation_from_pq(bool p, bool q);
std::pair<bool, bool> to_pq(PairRelation r);
PairRelation inverse(PairRelation r);

// One relation per unordered chiplet pair plus a rotation bit per chiplet.
class RelativeOrder {
 public:
  RelativeOrder() = default;
  // Every pair LeftOf in index order (a single row), nothing rotated.
  explicit RelativeOrder(int n);

  int size() const { return n_; }
  std::size_t pair_count() const { return rel_.size(); }

  // Relation of i with respect to j; any i != j.
  PairRelation relation(int i, int j) const;
  void set_relation(int i, int j, PairRelation r);

  bool rotated(int k) const { return rotated_[k] != 0; }
  void set_rotated(int k, bool r) { rotated_[k] = r ? 1 : 0; }

  // Exchanges the roles of chiplets a and b in every relation. Preserves acyclicity.
  void swap_chiplets(int a, int b);

  friend bool operator==(const RelativeOrder&, const RelativeOrder&) = default;

 private:
  std::size_t pair_index(int i, int j) const;  // requires i < j

  int n_ = 0;
  std::vector<PairRelation> rel_;
  std::vector<std::uint8_t> rotated_;
};

// Left-bottom compaction: longest paths through the horizontal and vertical
// constraint graphs. nullopt when the relations contain a cycle (no placement
// can satisfy them).
std::optional<Placement> try_realize(const RelativeOrder& order, std::span<const ChipletDef> chiplets);
Placement realize(const RelativeOrder& order, const FloorplanInstance& instance);

// Relations read off a non-overlapping placement; always acyclic.
RelativeOrder derive_order(const Placement& placement);

// Row packing of chiplets in the given sequence, rows no wider than row_width.
RelativeOrder shelf_order(std::span<const ChipletDef> chiplets, std::span<const int> sequence, double row_width);

struct ObjectiveBreakdown {
  double hpwl = 0.0;  // weighted by net weight
  double hpwl_unweighted = 0.0;
  double package_area = 0.0;
  double warpage_x = 0.0;
  double warpage_y = 0.0;
  double cost_2_5d = 0.0;
  double com_cost = 0.0;
  bool perf = false;  // total includes gamma1 * com_cost
  double total = 0.0;
};

double recombine(const ObjectiveWeights& w, const ObjectiveBreakdown& b);

// beta1 * hpwl + beta2 * package_area + beta3 * (wpg_x + wpg_y) + beta4 * C_2.5D
ObjectiveBreakdown objective_primary(const FloorplanInstance& instance, const Placement& placement);
// Primary objective plus gamma1 * com_cost(F).
ObjectiveBreakdown objective_perf(const FloorplanInstance& instance, const Placement& placement,
                                  const FrequencyMatrix& freq);

struct MoveProbabilities {
  double relation_flip = 0.5;
  double rotate = 0.2;
  double pair_swap = 0.3;
};

struct SolverConfig {
  std::uint64_t seed = 1;
  // Starting temperatures as a fraction of the starting energy.
  double initial_temperature = 0.15;
  double perf_initial_temperature = 0.01;
  double cooling_rate = 0.95;
  int temperature_steps = 120;
  int iterations_per_temperature = 0;  // 0 selects 20 * n
  int restarts = 3;
  int threads = 1;
  MoveProbabilities moves;
  // Multipliers on normalized violation measures, relative to the starting energy.
  double penalty_out_of_bounds = 4.0;
  double penalty_warpage = 4.0;
  double penalty_bump = 4.0;
  int exact_max_n = 3;
  ConstraintSet enforce;
};

void check_solver_config(const SolverConfig& cfg);

struct SolveReport {
  std::string stage;
  Placement placement;
  RelativeOrder order;
  ObjectiveBreakdown objective;
  std::vector<Violation> violations;  // full validate() result, including unenforced families
  std::uint64_t seed = 0;
  std::int64_t iterations = 0;
  double wall_time = 0.0;  // seconds
};

// No feasible solution within budget. Carries the lowest-energy infeasible candidate.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, SolveReport best) : Error(what), best_(std::move(best)) {}
  const SolveReport& best() const { return best_; }

 private:
  SolveReport best_;
};

// Simulated annealing over relative orders and rotations. Returns the best
// feasible solution over all restarts; restart r uses derive_seed(seed, Anneal, r).
SolveReport solve_primary(const FloorplanInstance& instance, const SolverConfig& cfg);

// Exhaustive enumeration of all relation assignments and rotations (n <= exact_max_n).
// Minimizes objective_perf when freq is given, objective_primary otherwise.
SolveReport solve_exact(const FloorplanInstance& instance, const SolverConfig& cfg,
                        const FrequencyMatrix* freq = nullptr);

// Annealing on objective_perf seeded from a feasible warm start. The result is
// never worse than the warm start under objective_perf.
SolveReport solve_perf(const FloorplanInstance& instance, const FrequencyMatrix& freq, const Placement& warm,
                       const RelativeOrder& warm_order, const SolverConfig& cfg);
SolveReport solve_perf(const FloorplanInstance& instance, const FrequencyMatrix& freq, const Placement& warm,
                       const SolverConfig& cfg);

struct FlowResult {
  SolveReport primary;
  SolveReport perf;
  FrequencyMatrix freq;
  double primary_com_cost = 0.0;  // com_cost(F) at the primary placement
  double primary_cycles = 0.0;
  double perf_cycles = 0.0;
};

// solve_primary -> simulate -> solve_perf warm-started from the primary solution.
FlowResult two_stage_flow(const FloorplanInstance& instance, const Workload& workload, const SolverConfig& cfg);

}  // namespace chipletfp
