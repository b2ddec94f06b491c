#include "chipletfp/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "chipletfp/costrel.hpp"

namespace chipletfp {

const char* to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::Overlap:
      return "overlap";
    case Violation::Kind::OutOfBoard:
      return "out_of_board";
    case Violation::Kind::BumpClearance:
      return "bump_clearance";
    case Violation::Kind::Warpage:
      return "warpage";
  }
  return "unknown";
}

namespace {

double net_span(const Placement& placement, const Net& net) {
  double lo_x = std::numeric_limits<double>::infinity();
  double lo_y = lo_x;
  double hi_x = -lo_x;
  double hi_y = -lo_x;
  for (int id : net.endpoints) {
    if (id < 0 || static_cast<std::size_t>(id) >= placement.size()) {
      std::ostringstream msg;
      msg << "net " << net.id << " references unknown chiplet " << id;
      throw InputError(msg.str());
    }
    const Point c = placement[id].center();
    lo_x = std::min(lo_x, c.x);
    hi_x = std::max(hi_x, c.x);
    lo_y = std::min(lo_y, c.y);
    hi_y = std::max(hi_y, c.y);
  }
  if (net.endpoints.empty()) return 0.0;
  return (hi_x - lo_x) + (hi_y - lo_y);
}

}  // namespace

double hpwl(const Placement& placement, std::span<const Net> nets) {
  double total = 0.0;
  for (const Net& net : nets) total += net.weight * net_span(placement, net);
  return total;
}

double hpwl_unweighted(const Placement& placement, std::span<const Net> nets) {
  double total = 0.0;
  for (const Net& net : nets) total += net_span(placement, net);
  return total;
}

double overlap_area(const Rect& a, const Rect& b) {
  const double dx = std::min(a.right(), b.right()) - std::max(a.x, b.x);
  const double dy = std::min(a.top(), b.top()) - std::max(a.y, b.y);
  if (dx <= 0.0 || dy <= 0.0) return 0.0;
  return dx * dy;
}

Rect bounding_box(const Placement& placement) {
  if (placement.empty()) throw InputError("bounding box of an empty placement");
  double lo_x = placement.front().x;
  double lo_y = placement.front().y;
  double hi_x = placement.front().x + placement.front().width;
  double hi_y = placement.front().y + placement.front().height;
  for (const PlacedChiplet& c : placement) {
    lo_x = std::min(lo_x, c.x);
    lo_y = std::min(lo_y, c.y);
    hi_x = std::max(hi_x, c.x + c.width);
    hi_y = std::max(hi_y, c.y + c.height);
  }
  return {lo_x, lo_y, hi_x - lo_x, hi_y - lo_y};
}

double package_area(const Placement& placement) { return bounding_box(placement).area(); }

void check_instance(const FloorplanInstance& instance) {
  if (!(instance.board_w > 0.0) || !(instance.board_h > 0.0)) {
    throw InputError("board extents must be positive");
  }
  if (instance.chiplets.empty()) throw InputError("instance has no chiplets");
  const int n = static_cast<int>(instance.chiplets.size());
  double total_area = 0.0;
  for (int i = 0; i < n; ++i) {
    const ChipletDef& c = instance.chiplets[i];
    if (c.id != i) {
      std::ostringstream msg;
      msg << "chiplet ids must be dense 0..n-1; position " << i << " has id " << c.id;
      throw InputError(msg.str());
    }
    if (!(c.width_o > 0.0) || !(c.height_o > 0.0)) {
      throw InputError("chiplet '" + c.name + "' must have positive width and height");
    }
    total_area += c.area();
  }
  if (total_area > instance.board_w * instance.board_h) {
    throw InputError("total chiplet area exceeds the board area; instance is infeasible");
  }
  for (const Net& net : instance.nets) {
    if (net.endpoints.size() < 2) {
      throw InputError("net " + std::to_string(net.id) + " needs at least two endpoints");
    }
    if (!(net.weight >= 0.0)) throw InputError("net " + std::to_string(net.id) + " has a negative weight");
    std::set<int> seen;
    for (int e : net.endpoints) {
      if (e < 0 || e >= n) {
        throw InputError("net " + std::to_string(net.id) + " references unknown chiplet " + std::to_string(e));
      }
      if (!seen.insert(e).second) {
        throw InputError("net " + std::to_string(net.id) + " repeats endpoint " + std::to_string(e));
      }
    }
  }
  if (instance.bumps.margin_radius < 0.0) throw InputError("bump margin radius must be nonnegative");
  for (const Point& b : instance.bumps.hotspots) {
    if (b.x < 0.0 || b.y < 0.0 || b.x > instance.board_w || b.y > instance.board_h) {
      throw InputError("hotspot bump lies outside the board");
    }
  }
  if (!instance.costs.Y_chip.empty() && instance.costs.Y_chip.size() != instance.chiplets.size()) {
    throw InputError("Y_chip override list must have one entry per chiplet");
  }
  if (!instance.costs.C_bond_per_chiplet.empty() &&
      instance.costs.C_bond_per_chiplet.size() != instance.chiplets.size()) {
    throw InputError("C_bond_per_chiplet must have one entry per chiplet");
  }
  check_cost_params(instance.costs);
  check_material_params(instance.materials);
}

std::vector<Violation> validate(const FloorplanInstance& instance, const Placement& placement) {
  if (placement.size() != instance.chiplets.size()) {
    throw InputError("placement covers " + std::to_string(placement.size()) + " chiplets, instance has " +
                     std::to_string(instance.chiplets.size()));
  }
  std::vector<Violation> out;
  const int n = static_cast<int>(placement.size());

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double ov = overlap_area(placement[i].rect(), placement[j].rect());
      if (ov > 0.0) {
        out.push_back({Violation::Kind::Overlap, i, j, ov, "chiplets overlap"});
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    const PlacedChiplet& c = placement[i];
    double excess = 0.0;
    excess += std::max(0.0, -c.x);
    excess += std::max(0.0, -c.y);
    excess += std::max(0.0, c.x + c.width - instance.board_w);
    excess += std::max(0.0, c.y + c.height - instance.board_h);
    if (excess > 0.0) {
      out.push_back({Violation::Kind::OutOfBoard, i, -1, excess, "chiplet leaves the board"});
    }
  }

  const BumpField& bumps = instance.bumps;
  for (int i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < bumps.hotspots.size(); ++s) {
      const PlacedChiplet& c = placement[i];
      if (bump_clearance(c, bumps.hotspots[s], bumps.margin_radius)) continue;
      const Point ctr = c.center();
      const double dist = std::hypot(ctr.x - bumps.hotspots[s].x, ctr.y - bumps.hotspots[s].y);
      const double need = circumscribed_radius(c.width, c.height) + bumps.margin_radius;
      out.push_back({Violation::Kind::BumpClearance, i, static_cast<int>(s), std::max(need - dist, 0.0),
                     "chiplet too close to hotspot bump"});
    }
  }

  const MaterialParams& m = instance.materials;
  const Rect box = bounding_box(placement);
  const double hx = 0.5 * box.w;
  const double hy = 0.5 * box.h;
  if (hx > m.l_x || hy > m.l_y) {
    out.push_back({Violation::Kind::Warpage, -1, -1, std::max(hx - m.l_x, hy - m.l_y),
                   "placement bounding box exceeds the substrate"});
  } else {
    const WarpageResult w = warpage_check(placement, m);
    if (!w.feasible) {
      out.push_back({Violation::Kind::Warpage, -1, -1,
                     std::max(w.wpg_x - m.wpgt, 0.0) + std::max(w.wpg_y - m.wpgt, 0.0),
                     "package warpage exceeds threshold"});
    }
  }
  return out;
}

std::vector<Violation> enforced_only(std::vector<Violation> violations, const ConstraintSet& enforce) {
  std::erase_if(violations, [&](const Violation& v) {
    return (v.kind == Violation::Kind::BumpClearance && !enforce.bumps) ||
           (v.kind == Violation::Kind::Warpage && !enforce.warpage);
  });
  return violations;
}

}  // namespace chipletfp
