#include <algorithm>
#include <cmath>
#include <tuple>

#include "chipletfp/core_model.hpp"
#include "chipletfp/costrel.hpp"
#include "chipletfp/floorplan.hpp"
#include "evaluator.hpp"

namespace chipletfp {

double recombine(const ObjectiveWeights& w, const ObjectiveBreakdown& b) {
  double total = w.beta1 * b.hpwl + w.beta2 * b.package_area + w.beta3 * (b.warpage_x + b.warpage_y) +
                 w.beta4 * b.cost_2_5d;
  if (b.perf) total += w.gamma1 * b.com_cost;
  return total;
}

ObjectiveBreakdown objective_primary(const FloorplanInstance& instance, const Placement& placement) {
  ObjectiveBreakdown b;
  b.hpwl = hpwl(placement, instance.nets);
  b.hpwl_unweighted = hpwl_unweighted(placement, instance.nets);
  b.package_area = package_area(placement);
  const WarpageResult w = warpage_check(placement, instance.materials);
  b.warpage_x = w.wpg_x;
  b.warpage_y = w.wpg_y;
  b.cost_2_5d = cost_2_5d(instance, placement);
  b.total = recombine(instance.weights, b);
  return b;
}

ObjectiveBreakdown objective_perf(const FloorplanInstance& instance, const Placement& placement,
                                  const FrequencyMatrix& freq) {
  ObjectiveBreakdown b = objective_primary(instance, placement);
  b.com_cost = com_cost(freq, placement);
  b.perf = true;
  b.total = recombine(instance.weights, b);
  return b;
}

namespace detail {

Evaluator::Evaluator(const FloorplanInstance& instance, const FrequencyMatrix* freq, ConstraintSet enforce)
    : instance_(instance), freq_(freq), enforce_(enforce) {
  // Placement-independent part of the package cost, accumulated in the same
  // order as cost_details() so both routes round identically.
  const CostParams& p = instance.costs;
  const int n = static_cast<int>(instance.chiplets.size());
  for (int i = 0; i < n; ++i) {
    const double s = instance.chiplets[i].area() / kUm2PerCm2;
    double y = die_yield(s, p);
    if (!p.Y_chip.empty() && p.Y_chip[i]) y = *p.Y_chip[i];
    chip_terms_.push_back(cost_per_yielded_area(s, p) * s / y + p.bond_cost(i));
  }
  bond_divisor_ = std::pow(p.Y_bond, n);
  double mean_side = 0.0;
  for (const ChipletDef& c : instance.chiplets) mean_side += std::sqrt(c.area());
  mean_side /= std::max<std::size_t>(1, instance.chiplets.size());
  bump_length_ = std::max(1e-9, instance.bumps.margin_radius + mean_side);
  if (freq_ && freq_->size() != n) throw InputError("frequency matrix dimension differs from chiplet count");
}

Evaluation Evaluator::operator()(const Placement& placement) const {
  const FloorplanInstance& in = instance_;
  Evaluation e;
  ObjectiveBreakdown& b = e.obj;
  b.hpwl = hpwl(placement, in.nets);
  b.hpwl_unweighted = hpwl_unweighted(placement, in.nets);
  const Rect box = bounding_box(placement);
  b.package_area = box.area();

  const MaterialParams& m = in.materials;
  const double hx = 0.5 * box.w;
  const double hy = 0.5 * box.h;
  b.warpage_x = warpage(std::min(hx, m.l_x), m.l_x, m, WarpageMode::Quadratic);
  b.warpage_y = warpage(std::min(hy, m.l_y), m.l_y, m, WarpageMode::Quadratic);
  e.warpage_excess = std::max(0.0, b.warpage_x - m.wpgt) + std::max(0.0, b.warpage_y - m.wpgt) +
                     std::max(0.0, hx - m.l_x) + std::max(0.0, hy - m.l_y);

  const CostParams& p = in.costs;
  const double c_inter = p.c_inter_per_area * (b.package_area / kUm2PerCm2);
  double sum = package_assembly_cost(static_cast<int>(placement.size()), p, c_inter) / p.Y_pack;
  for (double t : chip_terms_) sum += t;
  b.cost_2_5d = sum / bond_divisor_;

  if (freq_) {
    b.com_cost = com_cost(*freq_, placement);
    b.perf = true;
  }
  b.total = recombine(in.weights, b);

  for (const PlacedChiplet& c : placement) {
    e.out_of_bounds += std::max(0.0, -c.x) + std::max(0.0, -c.y) + std::max(0.0, c.x + c.width - in.board_w) +
                       std::max(0.0, c.y + c.height - in.board_h);
  }
  for (const PlacedChiplet& c : placement) {
    for (const Point& bump : in.bumps.hotspots) {
      if (bump_clearance(c, bump, in.bumps.margin_radius)) continue;
      const Point ctr = c.center();
      const double dist = std::hypot(ctr.x - bump.x, ctr.y - bump.y);
      const double need = circumscribed_radius(c.width, c.height) + in.bumps.margin_radius;
      // strictly positive so a failed clearance is never mistaken for a pass
      e.bump_deficit += std::max(need - dist, 1e-12 * need);
    }
  }
  e.feasible = e.out_of_bounds == 0.0 && (!enforce_.warpage || e.warpage_excess == 0.0) &&
               (!enforce_.bumps || e.bump_deficit == 0.0);
  return e;
}

double Evaluator::energy(const Evaluation& e, double scale, const SolverConfig& cfg) const {
  const FloorplanInstance& in = instance_;
  double penalty = cfg.penalty_out_of_bounds * e.out_of_bounds / (in.board_w + in.board_h);
  if (enforce_.warpage) penalty += cfg.penalty_warpage * e.warpage_excess / in.materials.wpgt;
  if (enforce_.bumps) penalty += cfg.penalty_bump * e.bump_deficit / bump_length_;
  return e.obj.total + scale * penalty;
}

bool better(const Evaluation& a, const Placement& pa, const Evaluation& b, const Placement& pb) {
  const double ax0 = pa.empty() ? 0.0 : pa.front().x;
  const double bx0 = pb.empty() ? 0.0 : pb.front().x;
  return std::tie(a.obj.total, a.obj.hpwl, a.obj.package_area, ax0) <
         std::tie(b.obj.total, b.obj.hpwl, b.obj.package_area, bx0);
}

}  // namespace detail
}  // namespace chipletfp
