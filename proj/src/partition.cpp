#include "chipletfp/partition.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "chipletfp/rng.hpp"
#include "json.hpp"

namespace chipletfp {

using nlohmann::json;

namespace {

constexpr double kAreaRelTol = 1e-6;

[[noreturn]] void fail_at(const std::string& path, const std::string& what) {
  throw InputError("hierarchy node '" + path + "': " + what);
}

HierNode parse_node(const json& j, const std::string& parent_path, const std::string& inherited_function) {
  if (!j.is_object()) fail_at(parent_path, "child entry is not an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "name" && key != "area_um2" && key != "function" && key != "children") {
      fail_at(parent_path, "unknown key '" + key + "'");
    }
  }
  if (!j.contains("name") || !j["name"].is_string()) fail_at(parent_path, "missing string 'name'");
  HierNode node;
  node.name = j["name"].get<std::string>();
  const std::string path = parent_path.empty() ? node.name : parent_path + "/" + node.name;
  node.function = j.contains("function") ? j["function"].get<std::string>() : inherited_function;

  std::set<std::string> sibling_names;
  if (j.contains("children")) {
    if (!j["children"].is_array()) fail_at(path, "'children' must be an array");
    for (const json& c : j["children"]) {
      HierNode child = parse_node(c, path, node.function);
      if (!sibling_names.insert(child.name).second) fail_at(path, "duplicate child name '" + child.name + "'");
      node.children.push_back(std::move(child));
    }
  }

  const bool has_area = j.contains("area_um2") && !j["area_um2"].is_null();
  if (has_area && !j["area_um2"].is_number()) fail_at(path, "'area_um2' must be a number");
  if (node.is_leaf()) {
    if (!has_area) fail_at(path, "leaf needs 'area_um2'");
    node.area = j["area_um2"].get<double>();
    if (!(node.area > 0.0)) fail_at(path, "leaf area must be positive");
    return node;
  }
  double sum = 0.0;
  for (const HierNode& c : node.children) sum += c.area;
  if (has_area) {
    const double stated = j["area_um2"].get<double>();
    if (std::abs(stated - sum) > kAreaRelTol * std::max(std::abs(stated), std::abs(sum))) {
      fail_at(path, "stated area " + std::to_string(stated) + " differs from children sum " + std::to_string(sum));
    }
  }
  node.area = sum;
  return node;
}

void collect_leaves(const HierNode& node, std::vector<std::string>& out) {
  if (node.is_leaf()) {
    out.push_back(node.name);
    return;
  }
  for (const HierNode& c : node.children) collect_leaves(c, out);
}

struct Residual {
  std::vector<const HierNode*> parts;
  double area = 0.0;

  bool empty() const { return parts.empty(); }
};

PoolEntry entry_from_node(const HierNode& node) {
  PoolEntry e;
  e.name = node.name;
  e.area = node.area;
  e.function = node.function;
  collect_leaves(node, e.provenance);
  return e;
}

PoolEntry entry_from_residual(const Residual& r, double a_min) {
  PoolEntry e;
  e.combined = true;
  e.area = r.area;
  e.undersized = r.area < a_min;
  std::set<std::string> functions;
  for (std::size_t i = 0; i < r.parts.size(); ++i) {
    if (i > 0) e.name += "+";
    e.name += r.parts[i]->name;
    functions.insert(r.parts[i]->function);
    collect_leaves(*r.parts[i], e.provenance);
  }
  e.function = functions.size() == 1 ? *functions.begin() : "mixed";
  return e;
}

void walk(const HierNode& node, double a_min, double a_max, std::vector<PoolEntry>& pool) {
  Residual residual;
  for (const HierNode& child : node.children) {
    if (child.area > a_max) {
      if (child.is_leaf()) {
        throw InputError("leaf '" + child.name + "' has area " + std::to_string(child.area) +
                         " above a_max " + std::to_string(a_max) + " and cannot be split");
      }
      walk(child, a_min, a_max, pool);
    } else if (child.area < a_min) {
      residual.parts.push_back(&child);
      residual.area += child.area;
      if (residual.area >= a_min) {
        pool.push_back(entry_from_residual(residual, a_min));
        residual = {};
      }
    } else {
      pool.push_back(entry_from_node(child));
    }
  }
  if (!residual.empty()) pool.push_back(entry_from_residual(residual, a_min));
}

}  // namespace

HierNode parse_hierarchy(std::string_view document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("hierarchy document is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("hierarchy document must be an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "version" && key != "root") throw InputError("hierarchy document: unknown key '" + key + "'");
  }
  if (!j.contains("version") || j["version"] != 1) throw InputError("hierarchy document: 'version' must be 1");
  if (!j.contains("root")) throw InputError("hierarchy document: missing 'root'");
  return parse_node(j["root"], "", "");
}

double leaf_area_sum(const HierNode& node) {
  if (node.is_leaf()) return node.area;
  double sum = 0.0;
  for (const HierNode& c : node.children) sum += leaf_area_sum(c);
  return sum;
}

void check_partition_config(const PartitionConfig& cfg) {
  if (!(cfg.rr >= 1.0)) throw InputError("relaxation ratio rr must be >= 1");
  if (cfg.c_min < 1) throw InputError("c_min must be >= 1");
  if (cfg.c_min >= cfg.c_max) throw InputError("c_min must be smaller than c_max");
}

AreaBounds area_bounds(double a_soc, const PartitionConfig& cfg) {
  check_partition_config(cfg);
  if (!(a_soc > 0.0)) throw InputError("SoC area must be positive");
  return {a_soc * cfg.rr / cfg.c_max, a_soc * cfg.rr / cfg.c_min};
}

std::vector<PoolEntry> par_chiplet(const HierNode& tree, double a_min, double a_max) {
  if (!(a_min < a_max)) throw InputError("a_min must be smaller than a_max");
  std::vector<PoolEntry> pool;
  if (tree.is_leaf()) {
    // A bare leaf is its own only candidate.
    if (tree.area > a_max) throw InputError("leaf '" + tree.name + "' exceeds a_max and cannot be split");
    PoolEntry e = entry_from_node(tree);
    e.undersized = tree.area < a_min;
    pool.push_back(std::move(e));
    return pool;
  }
  walk(tree, a_min, a_max, pool);
  return pool;
}

std::vector<PoolEntry> merge_pools(std::span<const std::vector<PoolEntry>> pools) {
  std::vector<PoolEntry> out;
  std::set<std::pair<std::string, double>> seen;
  for (const auto& pool : pools) {
    for (const PoolEntry& e : pool) {
      if (seen.insert({e.name, e.area}).second) out.push_back(e);
    }
  }
  return out;
}

std::vector<ChipletDef> realize_dimensions(std::span<const PoolEntry> pool, AspectRange aspect, std::uint64_t seed) {
  if (!(aspect.rho_min > 0.0) || !(aspect.rho_max >= aspect.rho_min)) {
    throw InputError("aspect range must satisfy 0 < rho_min <= rho_max");
  }
  Rng rng(seed);
  std::vector<ChipletDef> out;
  out.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const double rho = rng.uniform(aspect.rho_min, aspect.rho_max);
    ChipletDef c;
    c.id = static_cast<int>(i);
    c.name = pool[i].name;
    c.function = pool[i].function;
    c.width_o = std::sqrt(pool[i].area * rho);
    c.height_o = std::sqrt(pool[i].area / rho);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace chipletfp
