#pragma once

#include <string>
#include <vector>

#include "chipletfp/traffic.hpp"
#include "chipletfp/types.hpp"

namespace chipletfp {

struct SvgScene {
  double board_w = 0.0;  // um
  double board_h = 0.0;
  std::vector<std::string> names;
  Placement placement;
  BumpField bumps;
  const FrequencyMatrix* freq = nullptr;  // optional overlay
};

// 1000 px along the longer board side.
inline constexpr double kSvgLongSidePx = 1000.0;
double svg_scale(double board_w, double board_h);

// Board outline, one labelled rect per chiplet, hotspot circles with their
// clearance rings, and center-to-center lines whose stroke width is
// proportional to f_ij / max f (omitted when F is all zero). The y axis is
// flipped so the board origin sits at the lower left.
std::string render_svg(const SvgScene& scene);

}  // namespace chipletfp
