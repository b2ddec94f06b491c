#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chipletfp {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input (CLI exit code 2).
class InputError : public Error {
 public:
  using Error::Error;
};

inline constexpr double kUm2PerCm2 = 1e8;
inline constexpr double kUmPerMm = 1e3;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Axis-aligned rectangle given by its lower-left corner and extents.
struct Rect {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double right() const { return x + w; }
  double top() const { return y + h; }
  double area() const { return w * h; }
  Point center() const { return {x + 0.5 * w, y + 0.5 * h}; }
};

struct ChipletDef {
  int id = 0;
  std::string name;
  double width_o = 0.0;   // um
  double height_o = 0.0;  // um
  std::string function;

  double area() const { return width_o * height_o; }
};

struct Net {
  int id = 0;
  std::vector<int> endpoints;
  double weight = 1.0;
};

struct BumpField {
  std::vector<Point> hotspots;  // um
  double margin_radius = 0.0;   // d_mr, um
};

// One chiplet as placed. width/height are the effective (post-rotation) extents.
struct PlacedChiplet {
  double x = 0.0;
  double y = 0.0;
  bool rotated = false;
  double width = 0.0;
  double height = 0.0;

  Rect rect() const { return {x, y, width, height}; }
  Point center() const { return {x + 0.5 * width, y + 0.5 * height}; }
};

inline PlacedChiplet place(const ChipletDef& def, double x, double y, bool rotated) {
  return rotated ? PlacedChiplet{x, y, true, def.height_o, def.width_o}
                 : PlacedChiplet{x, y, false, def.width_o, def.height_o};
}

// Indexed by chiplet id.
using Placement = std::vector<PlacedChiplet>;

struct MaterialParams {
  double t = 0.5;
  double delta_alpha = 1.2e-5;  // 1/K
  double delta_T = 100.0;       // K
  double lambda = 1.0;
  double D = 1.0;
  double k = 1.0e-3;  // 1/um
  double l_x = 0.0;   // um, half substrate length
  double l_y = 0.0;   // um
  double wpgt = 0.0;  // um
};

struct CostParams {
  double P0 = 10.0;  // price per cm^2 of wafer
  double d0 = 0.09;  // defects per cm^2
  double alpha_cluster = 10.0;
  double C_pack = 5.0;
  double C_sub = 2.0;
  double c_inter_per_area = 5.0;  // per cm^2 of package area
  double C_bond = 0.1;            // default per-chiplet bonding cost
  std::vector<double> C_bond_per_chiplet;  // overrides C_bond when non-empty
  double y1 = 0.98;
  double y2 = 0.99;
  double y3 = 0.99;
  double Y_pack = 0.99;
  double Y_bond = 0.99;
  std::vector<std::optional<double>> Y_chip;  // per-chiplet override, may be empty

  double bond_cost(std::size_t i) const {
    return C_bond_per_chiplet.empty() ? C_bond : C_bond_per_chiplet.at(i);
  }
};

struct ObjectiveWeights {
  double beta1 = 1.0;    // wirelength
  double beta2 = 10.0;   // package area
  double beta3 = 100.0;  // warpage sum
  double beta4 = 1.0;    // 2.5D cost
  double gamma1 = 1.0;   // communication cost
};

// Piecewise-constant wirelength -> latency map. Ranges are half-open [b_i, b_{i+1}).
struct LatencyTable {
  std::vector<double> breakpoints_mm;
  std::vector<double> weights;
  double base_cycles = 4.0;
};

struct FloorplanInstance {
  std::vector<ChipletDef> chiplets;
  std::vector<Net> nets;
  double board_w = 0.0;  // um
  double board_h = 0.0;  // um
  BumpField bumps;
  MaterialParams materials;
  CostParams costs;
  ObjectiveWeights weights;
  LatencyTable latency;

  std::size_t size() const { return chiplets.size(); }
};

struct Violation {
  enum class Kind { Overlap, OutOfBoard, BumpClearance, Warpage };
  Kind kind = Kind::Overlap;
  int first = -1;   // chiplet id, or -1 for package-level
  int second = -1;  // second chiplet or hotspot index
  double magnitude = 0.0;
  std::string detail;
};

const char* to_string(Violation::Kind kind);

// Which soft families a solver treats as hard. Overlap and board bounds are always enforced.
struct ConstraintSet {
  bool bumps = true;
  bool warpage = true;
};

}  // namespace chipletfp
