#pragma once

#include <vector>

#include "chipletfp/types.hpp"

namespace chipletfp {

enum class CostMode { Exact, Taylor };
enum class WarpageMode { Exact, Quadratic };

// Negative binomial die yield (1 + d0*s/alpha)^-alpha for a die of s cm^2.
double die_yield(double area_cm2, const CostParams& params);

// Manufacturing cost per yielded area. Taylor mode is the second-order expansion of P0 / Y.
double cost_per_yielded_area(double area_cm2, const CostParams& params, CostMode mode = CostMode::Exact);

// Raw package cost after interposer/substrate bonding losses for n chiplets.
double package_assembly_cost(int n, const CostParams& params, double c_inter);

struct ChipletCost {
  double area_cm2 = 0.0;
  double yield = 1.0;
  double raw_cost = 0.0;  // C_chip_i
  double bond_cost = 0.0;
};

struct CostReport {
  std::vector<ChipletCost> chiplets;
  double package_area_cm2 = 0.0;
  double c_inter = 0.0;
  double assembly_cost = 0.0;
  double total = 0.0;  // C_2.5D
};

// Full 2.5D package cost with the interposer priced by the placement's package area.
CostReport cost_details(const FloorplanInstance& instance, const Placement& placement,
                        CostMode mode = CostMode::Exact);
double cost_2_5d(const FloorplanInstance& instance, const Placement& placement);

// Vertical displacement at half-span x of a substrate with half length l.
//
// Exact mode evaluates the closed form with cosh; quadratic mode replaces
// cosh(kx) - 1 by (kx)^2 / 2, which keeps w(0) = 0 and makes w a pure
// parabola with coefficient C * (1 - sech(kl)) / 2.
double warpage(double x, double l, const MaterialParams& m, WarpageMode mode);

// Upper bound on |exact - quadratic| at x: |C| k^2 x^4 cosh(kx) / (24 cosh(kl)).
// Follows from sum_{j>=2} u^{2j}/(2j)! <= u^4 cosh(u) / 24.
double warpage_quadratic_error_bound(double x, double l, const MaterialParams& m);

struct WarpageResult {
  double wpg_x = 0.0;
  double wpg_y = 0.0;
  bool feasible = true;
};

// Package warpage per axis, evaluated at half the placement bounding-box extent.
WarpageResult warpage_check(const Placement& placement, const MaterialParams& m);

// Threshold reached when the bounding box spans 85% of the larger substrate axis.
double default_warpage_threshold(const MaterialParams& m);
inline constexpr double kDefaultWarpageSpanFraction = 0.85;

// Material defaults for a board: l = half board extents, wpgt from default_warpage_threshold.
MaterialParams default_materials(double board_w, double board_h);

double circumscribed_radius(double w, double h);

// True iff the chiplet's circumscribed circle plus margin d_mr clears the bump center.
bool bump_clearance(const PlacedChiplet& chiplet, const Point& bump, double d_mr);

void check_cost_params(const CostParams& params);
void check_material_params(const MaterialParams& m);

}  // namespace chipletfp
