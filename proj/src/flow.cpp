#include "chipletfp/floorplan.hpp"
#include "chipletfp/traffic.hpp"

namespace chipletfp {

FlowResult two_stage_flow(const FloorplanInstance& instance, const Workload& workload, const SolverConfig& cfg) {
  FlowResult out;
  out.primary = solve_primary(instance, cfg);
  const SimulationResult first = simulate(out.primary.placement, instance.nets, workload, instance.latency);
  out.freq = first.freq;
  out.primary_cycles = first.total_cycles;
  out.primary_com_cost = com_cost(out.freq, out.primary.placement);

  out.perf = solve_perf(instance, out.freq, out.primary.placement, out.primary.order, cfg);
  out.perf_cycles = simulate(out.perf.placement, instance.nets, workload, instance.latency).total_cycles;
  return out;
}

}  // namespace chipletfp
