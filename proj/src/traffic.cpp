#include "chipletfp/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chipletfp/rng.hpp"

namespace chipletfp {

LatencyTable default_latency_table() {
  LatencyTable t;
  for (int i = 1; i <= 5; ++i) t.breakpoints_mm.push_back(10.0 * i / 6.0);
  t.weights = {1, 2, 3, 4, 5, 6};
  t.base_cycles = 4.0;
  return t;
}

void check_latency_table(const LatencyTable& t) {
  if (t.weights.size() != t.breakpoints_mm.size() + 1) {
    throw InputError("latency table needs exactly one more weight than breakpoints");
  }
  for (std::size_t i = 1; i < t.breakpoints_mm.size(); ++i) {
    if (!(t.breakpoints_mm[i] > t.breakpoints_mm[i - 1])) {
      throw InputError("latency breakpoints must be strictly ascending");
    }
  }
  for (std::size_t i = 0; i < t.weights.size(); ++i) {
    if (t.weights[i] < 0.0) throw InputError("latency weights must be nonnegative");
    if (i > 0 && t.weights[i] < t.weights[i - 1]) throw InputError("latency weights must be nondecreasing");
  }
  if (t.base_cycles < 0.0) throw InputError("base cycles must be nonnegative");
}

double latency_weight(double wirelength_um, const LatencyTable& table) {
  if (wirelength_um < 0.0) throw InputError("wirelength must be nonnegative");
  const double mm = wirelength_um / kUmPerMm;
  // first breakpoint strictly above mm
  const auto it = std::upper_bound(table.breakpoints_mm.begin(), table.breakpoints_mm.end(), mm);
  return table.weights[static_cast<std::size_t>(it - table.breakpoints_mm.begin())];
}

double center_distance(const PlacedChiplet& a, const PlacedChiplet& b) {
  const Point ca = a.center();
  const Point cb = b.center();
  return std::abs(ca.x - cb.x) + std::abs(ca.y - cb.y);
}

void FrequencyMatrix::add(int i, int j, std::int64_t packets) {
  if (i == j) throw InputError("frequency matrix diagonal must stay zero");
  counts_[static_cast<std::size_t>(i) * n_ + j] += packets;
  counts_[static_cast<std::size_t>(j) * n_ + i] += packets;
}

bool FrequencyMatrix::is_zero() const {
  return std::all_of(counts_.begin(), counts_.end(), [](std::int64_t c) { return c == 0; });
}

std::int64_t FrequencyMatrix::total() const {
  std::int64_t sum = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) sum += at(i, j);
  return sum;
}

namespace {

std::size_t other_than(Rng& rng, std::size_t n, std::size_t skip) {
  std::size_t k = rng.index(n - 1);
  return k >= skip ? k + 1 : k;
}

void check_flow(const Flow& f, int n) {
  if (f.src < 0 || f.src >= n || f.dst < 0 || f.dst >= n) {
    throw InputError("flow " + std::to_string(f.src) + "->" + std::to_string(f.dst) + " references an absent chiplet");
  }
  if (f.src == f.dst) throw InputError("flow source and destination must differ");
  if (f.packets < 0) throw InputError("flow packet counts must be nonnegative");
}

}  // namespace

std::vector<Flow> expand_workload(const Workload& workload, int n, std::span<const Net> nets) {
  std::vector<Flow> flows;
  for (const Flow& f : workload.flows) {
    check_flow(f, n);
    flows.push_back(f);
  }
  if (!workload.generator) return flows;

  const WorkloadGenerator& g = *workload.generator;
  if (g.total_packets < 0) throw InputError("generator total_packets must be nonnegative");
  if (g.total_packets == 0) return flows;
  if (n < 2) throw InputError("workload generator needs at least two chiplets");

  const auto un = static_cast<std::size_t>(n);
  std::vector<std::int64_t> counts(un * un, 0);
  Rng rng(g.seed);

  std::vector<double> cumulative;
  if (g.kind == WorkloadGenerator::Kind::NetProportional) {
    double acc = 0.0;
    for (const Net& net : nets) {
      acc += net.weight;
      cumulative.push_back(acc);
    }
    if (nets.empty() || !(acc > 0.0)) throw InputError("net-proportional workload needs weighted nets");
  }
  if (g.kind == WorkloadGenerator::Kind::Hotspot) {
    if (g.hot_chiplet < 0 || g.hot_chiplet >= n) throw InputError("hot_chiplet out of range");
    if (g.hot_fraction < 0.0 || g.hot_fraction > 1.0) throw InputError("hot_fraction must lie in [0, 1]");
  }

  for (std::int64_t p = 0; p < g.total_packets; ++p) {
    std::size_t src = 0;
    std::size_t dst = 0;
    switch (g.kind) {
      case WorkloadGenerator::Kind::Uniform:
        src = rng.index(un);
        dst = other_than(rng, un, src);
        break;
      case WorkloadGenerator::Kind::Hotspot:
        if (rng.uniform01() < g.hot_fraction) {
          src = static_cast<std::size_t>(g.hot_chiplet);
          dst = other_than(rng, un, src);
        } else {
          src = rng.index(un);
          dst = other_than(rng, un, src);
        }
        break;
      case WorkloadGenerator::Kind::NetProportional: {
        const double u = rng.uniform01() * cumulative.back();
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) --it;
        const Net& net = nets[static_cast<std::size_t>(it - cumulative.begin())];
        const std::size_t m = net.endpoints.size();
        const std::size_t a = rng.index(m);
        const std::size_t b = other_than(rng, m, a);
        src = static_cast<std::size_t>(net.endpoints[a]);
        dst = static_cast<std::size_t>(net.endpoints[b]);
        break;
      }
    }
    ++counts[src * un + dst];
  }
  for (std::size_t s = 0; s < un; ++s) {
    for (std::size_t d = 0; d < un; ++d) {
      if (counts[s * un + d] > 0) flows.push_back({static_cast<int>(s), static_cast<int>(d), counts[s * un + d]});
    }
  }
  return flows;
}

SimulationResult simulate(const Placement& placement, std::span<const Net> nets, const Workload& workload,
                          const LatencyTable& table) {
  check_latency_table(table);
  const int n = static_cast<int>(placement.size());
  SimulationResult r{FrequencyMatrix(n), 0.0};
  for (const Flow& f : expand_workload(workload, n, nets)) {
    if (f.packets == 0) continue;
    r.freq.add(f.src, f.dst, f.packets);
    const double d = center_distance(placement[f.src], placement[f.dst]);
    r.total_cycles += static_cast<double>(f.packets) * (table.base_cycles + latency_weight(d, table));
  }
  return r;
}

double com_cost(const FrequencyMatrix& freq, const Placement& placement) {
  const int n = static_cast<int>(placement.size());
  if (freq.size() != n) {
    throw InputError("frequency matrix is " + std::to_string(freq.size()) + "x" + std::to_string(freq.size()) +
                     " but the placement has " + std::to_string(n) + " chiplets");
  }
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::int64_t f = freq.at(i, j);
      if (f != 0) sum += static_cast<double>(f) * center_distance(placement[i], placement[j]);
    }
  }
  return sum;
}

}  // namespace chipletfp
