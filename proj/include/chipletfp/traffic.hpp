#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chipletfp/types.hpp"

namespace chipletfp {

// Six equal ranges over 0-10 mm with weights 1..6 and a 4-cycle interface base.
LatencyTable default_latency_table();
void check_latency_table(const LatencyTable& table);

// Weight of the half-open range containing the wirelength (um).
double latency_weight(double wirelength_um, const LatencyTable& table);

// Center-to-center Manhattan distance.
double center_distance(const PlacedChiplet& a, const PlacedChiplet& b);

struct Flow {
  int src = 0;
  int dst = 0;
  std::int64_t packets = 0;
};

struct WorkloadGenerator {
  enum class Kind { Uniform, Hotspot, NetProportional };
  Kind kind = Kind::Uniform;
  std::int64_t total_packets = 0;
  std::uint64_t seed = 0;
  int hot_chiplet = 0;        // Hotspot only
  double hot_fraction = 0.5;  // Hotspot only
};

struct Workload {
  std::vector<Flow> flows;
  std::optional<WorkloadGenerator> generator;
};

// Symmetric packet-count matrix with zero diagonal.
class FrequencyMatrix {
 public:
  FrequencyMatrix() = default;
  explicit FrequencyMatrix(int n) : n_(n), counts_(static_cast<std::size_t>(n) * n, 0) {}

  int size() const { return n_; }
  std::int64_t at(int i, int j) const { return counts_[static_cast<std::size_t>(i) * n_ + j]; }
  // Adds packets to both (i, j) and (j, i).
  void add(int i, int j, std::int64_t packets);
  bool is_zero() const;
  std::int64_t total() const;  // sum over i < j

  friend bool operator==(const FrequencyMatrix&, const FrequencyMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<std::int64_t> counts_;
};

// Explicit flows followed by the generator's draws, validated against n chiplets.
//
// Generators draw one packet at a time from Rng(seed):
//   uniform          src = index(n); dst = index(n - 1), shifted past src
//   hotspot          u = uniform01(); if u < hot_fraction the pair is
//                    (hot, other) with other = index(n - 1) shifted past hot,
//                    otherwise a uniform pair as above
//   net-proportional net chosen with probability proportional to weight via
//                    uniform01() on the cumulative weights, then two distinct
//                    endpoints drawn like a uniform pair inside the net
std::vector<Flow> expand_workload(const Workload& workload, int n, std::span<const Net> nets);

struct SimulationResult {
  FrequencyMatrix freq;
  double total_cycles = 0.0;
};

// Packet-count simulation: every packet costs base_cycles plus the latency
// weight of its pair's center distance. Frequencies do not depend on geometry.
SimulationResult simulate(const Placement& placement, std::span<const Net> nets, const Workload& workload,
                          const LatencyTable& table);

// Sum over i < j of f_ij times center-to-center Manhattan distance.
double com_cost(const FrequencyMatrix& freq, const Placement& placement);

}  // namespace chipletfp
