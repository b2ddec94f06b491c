#pragma once

#include <span>
#include <vector>

#include "chipletfp/types.hpp"

namespace chipletfp {

// Sum over nets of weight * half-perimeter of the bounding box of endpoint centers.
double hpwl(const Placement& placement, std::span<const Net> nets);
double hpwl_unweighted(const Placement& placement, std::span<const Net> nets);

// Interior intersection area; zero for disjoint or edge-touching rectangles.
double overlap_area(const Rect& a, const Rect& b);

Rect bounding_box(const Placement& placement);

// Area of the tight bounding box of all placed chiplets.
double package_area(const Placement& placement);

// Rejects instances that break the type invariants (dense ids, valid nets,
// positive extents, total chiplet area within the board).
void check_instance(const FloorplanInstance& instance);

// Every overlap, out-of-board, bump-clearance and warpage violation. Empty means feasible.
std::vector<Violation> validate(const FloorplanInstance& instance, const Placement& placement);

// Drops the families a solver was told not to enforce.
std::vector<Violation> enforced_only(std::vector<Violation> violations, const ConstraintSet& enforce);

}  // namespace chipletfp
