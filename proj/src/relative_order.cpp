#include <algorithm>
#include <cmath>

#include "chipletfp/floorplan.hpp"

namespace chipletfp {

PairRelation relation_from_pq(bool p, bool q) { return static_cast<PairRelation>((p ? 2 : 0) + (q ? 1 : 0)); }

std::pair<bool, bool> to_pq(PairRelation r) {
  const auto v = static_cast<std::uint8_t>(r);
  return {(v & 2) != 0, (v & 1) != 0};
}

PairRelation inverse(PairRelation r) {
  switch (r) {
    case PairRelation::LeftOf:
      return PairRelation::RightOf;
    case PairRelation::RightOf:
      return PairRelation::LeftOf;
    case PairRelation::Below:
      return PairRelation::Above;
    case PairRelation::Above:
      return PairRelation::Below;
  }
  return r;
}

RelativeOrder::RelativeOrder(int n)
    : n_(n),
      rel_(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2, PairRelation::LeftOf),
      rotated_(static_cast<std::size_t>(n), 0) {}

std::size_t RelativeOrder::pair_index(int i, int j) const {
  const auto ui = static_cast<std::size_t>(i);
  const auto un = static_cast<std::size_t>(n_);
  return ui * (2 * un - ui - 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

PairRelation RelativeOrder::relation(int i, int j) const {
  if (i < j) return rel_[pair_index(i, j)];
  return inverse(rel_[pair_index(j, i)]);
}

void RelativeOrder::set_relation(int i, int j, PairRelation r) {
  if (i < j) {
    rel_[pair_index(i, j)] = r;
  } else {
    rel_[pair_index(j, i)] = inverse(r);
  }
}

void RelativeOrder::swap_chiplets(int a, int b) {
  if (a == b) return;
  const RelativeOrder old = *this;
  auto role = [&](int k) { return k == a ? b : (k == b ? a : k); };
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      rel_[pair_index(i, j)] = old.relation(role(i), role(j));
    }
  }
}

namespace {

// Longest path from the sources; false when the graph has a cycle.
bool longest_paths(int n, const std::vector<std::vector<int>>& succ, const std::vector<double>& extent,
                   std::vector<double>& coord) {
  std::vector<int> indegree(n, 0);
  for (int u = 0; u < n; ++u)
    for (int v : succ[u]) ++indegree[v];
  std::vector<int> ready;
  ready.reserve(n);
  for (int u = 0; u < n; ++u)
    if (indegree[u] == 0) ready.push_back(u);
  coord.assign(n, 0.0);
  int visited = 0;
  std::size_t head = 0;
  while (head < ready.size()) {
    const int u = ready[head++];
    ++visited;
    const double reach = coord[u] + extent[u];
    for (int v : succ[u]) {
      coord[v] = std::max(coord[v], reach);
      if (--indegree[v] == 0) ready.push_back(v);
    }
  }
  return visited == n;
}

}  // namespace

std::optional<Placement> try_realize(const RelativeOrder& order, std::span<const ChipletDef> chiplets) {
  const int n = order.size();
  if (static_cast<std::size_t>(n) != chiplets.size()) throw InputError("relative order size differs from chiplet count");
  std::vector<double> w(n), h(n);
  for (int k = 0; k < n; ++k) {
    w[k] = order.rotated(k) ? chiplets[k].height_o : chiplets[k].width_o;
    h[k] = order.rotated(k) ? chiplets[k].width_o : chiplets[k].height_o;
  }
  std::vector<std::vector<int>> right_of(n), above(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      switch (order.relation(i, j)) {
        case PairRelation::LeftOf:
          right_of[i].push_back(j);
          break;
        case PairRelation::RightOf:
          right_of[j].push_back(i);
          break;
        case PairRelation::Below:
          above[i].push_back(j);
          break;
        case PairRelation::Above:
          above[j].push_back(i);
          break;
      }
    }
  }
  std::vector<double> xs, ys;
  if (!longest_paths(n, right_of, w, xs) || !longest_paths(n, above, h, ys)) return std::nullopt;
  Placement p(n);
  for (int k = 0; k < n; ++k) p[k] = {xs[k], ys[k], order.rotated(k), w[k], h[k]};
  return p;
}

Placement realize(const RelativeOrder& order, const FloorplanInstance& instance) {
  auto p = try_realize(order, instance.chiplets);
  if (!p) throw InputError("relative order contains a cyclic left/right or below/above chain");
  return *p;
}

RelativeOrder derive_order(const Placement& placement) {
  const int n = static_cast<int>(placement.size());
  RelativeOrder order(n);
  double scale = 1.0;
  for (const PlacedChiplet& c : placement) scale = std::max({scale, std::abs(c.x) + c.width, std::abs(c.y) + c.height});
  const double eps = 1e-9 * scale;
  for (int k = 0; k < n; ++k) order.set_rotated(k, placement[k].rotated);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const PlacedChiplet& a = placement[i];
      const PlacedChiplet& b = placement[j];
      if (a.x + a.width <= b.x + eps) {
        order.set_relation(i, j, PairRelation::LeftOf);
      } else if (b.x + b.width <= a.x + eps) {
        order.set_relation(i, j, PairRelation::RightOf);
      } else if (a.y + a.height <= b.y + eps) {
        order.set_relation(i, j, PairRelation::Below);
      } else if (b.y + b.height <= a.y + eps) {
        order.set_relation(i, j, PairRelation::Above);
      } else {
        throw InputError("chiplets " + std::to_string(i) + " and " + std::to_string(j) +
                         " overlap; no relative order exists");
      }
    }
  }
  return order;
}

RelativeOrder shelf_order(std::span<const ChipletDef> chiplets, std::span<const int> sequence, double row_width) {
  const int n = static_cast<int>(chiplets.size());
  RelativeOrder order(n);
  std::vector<int> row_of(n, 0);
  int row = 0;
  double used = 0.0;
  for (int id : sequence) {
    const double w = chiplets[id].width_o;
    if (used > 0.0 && used + w > row_width) {
      ++row;
      used = 0.0;
    }
    row_of[id] = row;
    used += w;
  }
  for (std::size_t a = 0; a < sequence.size(); ++a) {
    for (std::size_t b = a + 1; b < sequence.size(); ++b) {
      const int i = sequence[a];
      const int j = sequence[b];
      order.set_relation(i, j, row_of[i] == row_of[j] ? PairRelation::LeftOf : PairRelation::Below);
    }
  }
  return order;
}

}  // namespace chipletfp
