#pragma once

// Non-throwing objective + violation measurement shared by the solvers.

#include <vector>

#include "chipletfp/floorplan.hpp"

namespace chipletfp::detail {

struct Evaluation {
  ObjectiveBreakdown obj;
  double out_of_bounds = 0.0;  // um beyond the board, summed over chiplets
  double warpage_excess = 0.0;  // um above wpgt, both axes
  double bump_deficit = 0.0;    // um short of clearance, summed over chiplet/bump pairs
  bool feasible = false;        // w.r.t. the enforced constraint families
};

class Evaluator {
 public:
  Evaluator(const FloorplanInstance& instance, const FrequencyMatrix* freq, ConstraintSet enforce);

  Evaluation operator()(const Placement& placement) const;

  // Objective plus scaled penalties; scale is the energy unit of one restart.
  double energy(const Evaluation& e, double scale, const SolverConfig& cfg) const;

  const FloorplanInstance& instance() const { return instance_; }

 private:
  const FloorplanInstance& instance_;
  const FrequencyMatrix* freq_;
  ConstraintSet enforce_;
  std::vector<double> chip_terms_;  // C_chip_i / Y_chip_i + C_bond_i
  double bond_divisor_ = 1.0;       // Y_bond^n
  double bump_length_ = 1.0;        // normalizer for bump deficits
};

// Strict "a is better than b" for feasible candidates: objective, then
// (hpwl, package_area, chiplet-0 x) lexicographically.
bool better(const Evaluation& a, const Placement& pa, const Evaluation& b, const Placement& pb);

}  // namespace chipletfp::detail
