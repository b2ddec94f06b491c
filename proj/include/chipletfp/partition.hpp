#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chipletfp/types.hpp"

namespace chipletfp {

// SoC hierarchy node. A node without children is a leaf.
struct HierNode {
  std::string name;
  double area = 0.0;  // um^2
  std::string function;
  std::vector<HierNode> children;

  bool is_leaf() const { return children.empty(); }
};

// Parses the hierarchy document (JSON, see README). Missing internal areas are
// filled bottom-up; stated areas must match the children within 1e-6 relative.
HierNode parse_hierarchy(std::string_view document);

double leaf_area_sum(const HierNode& node);

struct PartitionConfig {
  double rr = 1.1;  // relaxation ratio
  int c_min = 10;
  int c_max = 30;
};

void check_partition_config(const PartitionConfig& cfg);

struct AreaBounds {
  double a_min = 0.0;
  double a_max = 0.0;
};

AreaBounds area_bounds(double a_soc, const PartitionConfig& cfg);

struct PoolEntry {
  std::string name;
  double area = 0.0;
  std::string function;
  bool combined = false;   // produced by merging undersized siblings
  bool undersized = false;  // terminal residual that never reached a_min
  std::vector<std::string> provenance;  // contributing leaf names, in tree order
};

// Recursive chiplet extraction. Oversized children recurse, undersized
// siblings accumulate into a residual that is flushed as soon as it reaches
// a_min and once more at the end of each level.
std::vector<PoolEntry> par_chiplet(const HierNode& tree, double a_min, double a_max);

// Concatenates pools and drops repeated (name, area) entries, keeping the first.
std::vector<PoolEntry> merge_pools(std::span<const std::vector<PoolEntry>> pools);

struct AspectRange {
  double rho_min = 1.0;
  double rho_max = 1.0;
};

// w = sqrt(area * rho), h = sqrt(area / rho) with rho drawn uniformly from the range.
std::vector<ChipletDef> realize_dimensions(std::span<const PoolEntry> pool, AspectRange aspect, std::uint64_t seed);

}  // namespace chipletfp
