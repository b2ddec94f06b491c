#include "chipletfp/costrel.hpp"

#include <algorithm>
#include <cmath>

#include "chipletfp/core_model.hpp"

namespace chipletfp {

namespace {

bool is_yield(double y) { return y > 0.0 && y <= 1.0; }

double warpage_scale(const MaterialParams& m) { return (m.t * m.delta_alpha * m.delta_T) / (2.0 * m.lambda * m.D); }

}  // namespace

void check_cost_params(const CostParams& p) {
  if (!(p.d0 >= 0.0)) throw InputError("defect density d0 must be nonnegative");
  if (!(p.alpha_cluster > 0.0)) throw InputError("alpha_cluster must be positive");
  if (p.P0 < 0.0 || p.C_pack < 0.0 || p.C_sub < 0.0 || p.c_inter_per_area < 0.0 || p.C_bond < 0.0) {
    throw InputError("prices must be nonnegative");
  }
  for (double c : p.C_bond_per_chiplet) {
    if (c < 0.0) throw InputError("bonding costs must be nonnegative");
  }
  for (double y : {p.y1, p.y2, p.y3, p.Y_pack, p.Y_bond}) {
    if (!is_yield(y)) throw InputError("yields must lie in (0, 1]");
  }
  for (const auto& y : p.Y_chip) {
    if (y && !is_yield(*y)) throw InputError("Y_chip overrides must lie in (0, 1]");
  }
}

void check_material_params(const MaterialParams& m) {
  if (m.D == 0.0) throw InputError("material coefficient D must be nonzero");
  if (m.lambda == 0.0) throw InputError("material coefficient lambda must be nonzero");
  if (!(m.k > 0.0)) throw InputError("decay coefficient k must be positive");
  if (!(m.l_x > 0.0) || !(m.l_y > 0.0)) throw InputError("substrate half lengths must be positive");
  if (!(m.wpgt > 0.0)) throw InputError("warpage threshold must be positive");
}

double die_yield(double area_cm2, const CostParams& params) {
  if (area_cm2 < 0.0) throw InputError("die area must be nonnegative");
  const double a = params.alpha_cluster;
  return std::pow(1.0 + params.d0 * area_cm2 / a, -a);
}

double cost_per_yielded_area(double area_cm2, const CostParams& params, CostMode mode) {
  if (mode == CostMode::Exact) return params.P0 / die_yield(area_cm2, params);
  if (area_cm2 < 0.0) throw InputError("die area must be nonnegative");
  const double ds = params.d0 * area_cm2;
  const double a = params.alpha_cluster;
  return params.P0 * (1.0 + ds + (a - 1.0) / (2.0 * a) * ds * ds);
}

double package_assembly_cost(int n, const CostParams& p, double c_inter) {
  if (n < 1) throw InputError("package needs at least one chiplet");
  if (p.y1 == 0.0 || p.y2 == 0.0 || p.y3 == 0.0) throw InputError("bonding yield of zero");
  if (c_inter < 0.0) throw InputError("interposer cost must be nonnegative");
  const double chain = p.y1 * std::pow(p.y2, n) * p.y3;
  return p.C_pack + c_inter * (1.0 / chain - 1.0) + p.C_sub * (1.0 / p.y3 - 1.0);
}

CostReport cost_details(const FloorplanInstance& instance, const Placement& placement, CostMode mode) {
  const CostParams& p = instance.costs;
  if (p.Y_pack == 0.0 || p.Y_bond == 0.0) throw InputError("package or bond yield of zero");
  const int n = static_cast<int>(instance.chiplets.size());

  CostReport r;
  r.package_area_cm2 = package_area(placement) / kUm2PerCm2;
  r.c_inter = p.c_inter_per_area * r.package_area_cm2;
  r.assembly_cost = package_assembly_cost(n, p, r.c_inter);

  double sum = r.assembly_cost / p.Y_pack;
  r.chiplets.reserve(n);
  for (int i = 0; i < n; ++i) {
    ChipletCost c;
    c.area_cm2 = instance.chiplets[i].area() / kUm2PerCm2;
    c.yield = die_yield(c.area_cm2, p);
    if (!p.Y_chip.empty() && p.Y_chip[i]) c.yield = *p.Y_chip[i];
    if (c.yield == 0.0) throw InputError("chiplet yield of zero");
    c.raw_cost = cost_per_yielded_area(c.area_cm2, p, mode) * c.area_cm2;
    c.bond_cost = p.bond_cost(i);
    sum += c.raw_cost / c.yield + c.bond_cost;
    r.chiplets.push_back(c);
  }
  r.total = sum / std::pow(p.Y_bond, n);
  return r;
}

double cost_2_5d(const FloorplanInstance& instance, const Placement& placement) {
  return cost_details(instance, placement).total;
}

double warpage(double x, double l, const MaterialParams& m, WarpageMode mode) {
  if (x < 0.0 || x > l) throw InputError("warpage argument must satisfy 0 <= x <= l");
  const double k = m.k;
  const double kx = k * x;
  const double bend = mode == WarpageMode::Exact ? std::cosh(kx) - 1.0 : 0.5 * kx * kx;
  return warpage_scale(m) * (0.5 * x * x - bend / (k * k * std::cosh(k * l)));
}

double warpage_quadratic_error_bound(double x, double l, const MaterialParams& m) {
  const double k = m.k;
  return std::abs(warpage_scale(m)) * k * k * std::pow(x, 4) * std::cosh(k * x) / (24.0 * std::cosh(k * l));
}

WarpageResult warpage_check(const Placement& placement, const MaterialParams& m) {
  const Rect box = bounding_box(placement);
  const double hx = 0.5 * box.w;
  const double hy = 0.5 * box.h;
  if (hx > m.l_x || hy > m.l_y) throw InputError("placement bounding box exceeds the substrate");
  WarpageResult r;
  r.wpg_x = warpage(hx, m.l_x, m, WarpageMode::Quadratic);
  r.wpg_y = warpage(hy, m.l_y, m, WarpageMode::Quadratic);
  r.feasible = r.wpg_x <= m.wpgt && r.wpg_y <= m.wpgt;
  return r;
}

double default_warpage_threshold(const MaterialParams& m) {
  const double l = std::max(m.l_x, m.l_y);
  return warpage(kDefaultWarpageSpanFraction * l, l, m, WarpageMode::Quadratic);
}

MaterialParams default_materials(double board_w, double board_h) {
  MaterialParams m;
  m.l_x = 0.5 * board_w;
  m.l_y = 0.5 * board_h;
  m.wpgt = default_warpage_threshold(m);
  return m;
}

double circumscribed_radius(double w, double h) { return 0.5 * std::sqrt(w * w + h * h); }

bool bump_clearance(const PlacedChiplet& chiplet, const Point& bump, double d_mr) {
  const Point c = chiplet.center();
  const double dx = c.x - bump.x;
  const double dy = c.y - bump.y;
  const double reach = circumscribed_radius(chiplet.width, chiplet.height) + d_mr;
  return dx * dx + dy * dy >= reach * reach;
}

}  // namespace chipletfp
