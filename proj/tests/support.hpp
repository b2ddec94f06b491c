#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "chipletfp/costrel.hpp"
#include "chipletfp/floorplan.hpp"
#include "chipletfp/io.hpp"
#include "chipletfp/rng.hpp"
#include "chipletfp/traffic.hpp"
#include "chipletfp/types.hpp"

namespace testing_support {

using namespace chipletfp;

inline std::string data_path(const std::string& name) { return std::string(CHIPLETFP_DATA_DIR) + "/" + name; }
inline std::string fixture_path(const std::string& name) { return std::string(CHIPLETFP_FIXTURE_DIR) + "/" + name; }

inline FloorplanInstance load_instance(const std::string& name) { return parse_instance(read_file(data_path(name))); }

inline ChipletDef chiplet(int id, double w, double h, const std::string& name = "") {
  ChipletDef c;
  c.id = id;
  c.name = name.empty() ? "c" + std::to_string(id) : name;
  c.width_o = w;
  c.height_o = h;
  c.function = "block";
  return c;
}

inline Net net(int id, std::vector<int> endpoints, double weight = 1.0) { return {id, std::move(endpoints), weight}; }

// Instance with default materials for the board and the given blocks.
inline FloorplanInstance make_instance(std::vector<ChipletDef> chips, std::vector<Net> nets, double w, double h) {
  FloorplanInstance in;
  in.chiplets = std::move(chips);
  in.nets = std::move(nets);
  in.board_w = w;
  in.board_h = h;
  in.materials = default_materials(w, h);
  in.latency = default_latency_table();
  return in;
}

// n blocks with random sides in [lo, hi], a few random nets, and a roomy board.
inline FloorplanInstance random_instance(std::uint64_t seed, int n, double lo = 200.0, double hi = 1200.0) {
  Rng rng(seed);
  std::vector<ChipletDef> chips;
  double area = 0.0;
  for (int k = 0; k < n; ++k) {
    chips.push_back(chiplet(k, std::round(rng.uniform(lo, hi)), std::round(rng.uniform(lo, hi))));
    area += chips.back().area();
  }
  std::vector<Net> nets;
  const int net_count = n + 1;
  for (int i = 0; i < net_count; ++i) {
    const int a = static_cast<int>(rng.index(n));
    int b = static_cast<int>(rng.index(n - 1));
    if (b >= a) ++b;
    nets.push_back(net(i, {a, b}, 1.0 + static_cast<double>(rng.index(3))));
  }
  const double side = std::ceil(std::sqrt(area * 4.0));
  return make_instance(std::move(chips), std::move(nets), side, side);
}

// Random (possibly cyclic) relation assignment.
inline RelativeOrder random_order(Rng& rng, int n) {
  RelativeOrder o(n);
  for (int i = 0; i < n; ++i) {
    o.set_rotated(i, rng.uniform01() < 0.5);
    for (int j = i + 1; j < n; ++j) o.set_relation(i, j, static_cast<PairRelation>(rng.index(4)));
  }
  return o;
}

// Random acyclic order: relations read off a random ordering of ids, so every
// constraint edge points forward in that ordering.
inline RelativeOrder random_acyclic_order(Rng& rng, int n) {
  std::vector<int> perm(n);
  for (int k = 0; k < n; ++k) perm[k] = k;
  for (int k = n - 1; k > 0; --k) std::swap(perm[k], perm[rng.index(static_cast<std::size_t>(k) + 1)]);
  std::vector<int> rank(n);
  for (int k = 0; k < n; ++k) rank[perm[k]] = k;
  RelativeOrder o(n);
  for (int i = 0; i < n; ++i) {
    o.set_rotated(i, rng.uniform01() < 0.5);
    for (int j = i + 1; j < n; ++j) {
      const bool horizontal = rng.uniform01() < 0.5;
      const bool i_first = rank[i] < rank[j];
      if (horizontal) {
        o.set_relation(i, j, i_first ? PairRelation::LeftOf : PairRelation::RightOf);
      } else {
        o.set_relation(i, j, i_first ? PairRelation::Below : PairRelation::Above);
      }
    }
  }
  return o;
}

inline SolverConfig quick_config(std::uint64_t seed) {
  SolverConfig cfg;
  cfg.seed = seed;
  return cfg;
}

}  // namespace testing_support
