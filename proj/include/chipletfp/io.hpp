#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chipletfp/floorplan.hpp"
#include "chipletfp/partition.hpp"
#include "chipletfp/traffic.hpp"
#include "chipletfp/types.hpp"

// JSON and CSV documents used by the command line. Every JSON document carries
// "version": 1, unknown keys are rejected, and lengths are suffixed with their
// unit (_um, _um2, _mm). Schemas are listed in the README.

namespace chipletfp {

inline constexpr int kDocumentVersion = 1;

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// Omitted material fields fall back to default_materials(board); an omitted
// wpgt_um is derived from the final material values.
FloorplanInstance parse_instance(std::string_view document);
std::string write_instance(const FloorplanInstance& instance);

// Generator draws use the supplied seed; documents carry no seed of their own.
Workload parse_workload(std::string_view document, std::uint64_t seed);

// Fields override the SolverConfig defaults.
SolverConfig parse_solver_config(std::string_view document);

// A placed solution with enough context (board, bumps, names) to render or check on its own.
struct SolutionDocument {
  std::string stage;
  std::uint64_t seed = 0;
  std::int64_t iterations = 0;
  double board_w = 0.0;
  double board_h = 0.0;
  BumpField bumps;
  std::vector<std::string> names;
  Placement placement;
  std::optional<RelativeOrder> order;
  ObjectiveBreakdown objective;
  std::vector<Violation> violations;
};

SolutionDocument make_solution(const FloorplanInstance& instance, const SolveReport& report);
SolutionDocument parse_solution(std::string_view document);
std::string write_solution(const SolutionDocument& solution);

// Throws InputError unless the solution describes the same chiplets and board as the instance.
void check_solution_matches(const FloorplanInstance& instance, const SolutionDocument& solution);

struct PoolDocument {
  double a_soc = 0.0;
  AreaBounds bounds;
  std::vector<PoolEntry> entries;
  std::vector<ChipletDef> chiplets;  // realized dimensions, same order as entries
};

PoolDocument parse_pool(std::string_view document);
std::string write_pool(const PoolDocument& pool);

// Header "id,0,1,..,n-1" followed by one row per chiplet.
std::string write_frequency_csv(const FrequencyMatrix& freq);
FrequencyMatrix parse_frequency_csv(std::string_view document);

struct StageMetrics {
  double hpwl = 0.0;
  double package_area = 0.0;
  double wpg = 0.0;  // wpg_x + wpg_y
  double com_cost = 0.0;
  double cycles = 0.0;
};

struct Comparison {
  StageMetrics primary;
  StageMetrics perf;
  // (perf - primary) / primary per column; empty when primary is zero.
  std::optional<double> ratio_hpwl, ratio_package_area, ratio_wpg, ratio_com_cost, ratio_cycles;
};

Comparison make_comparison(const FlowResult& flow);
std::string write_comparison(const Comparison& c);
Comparison parse_comparison(std::string_view document);
std::string comparison_table(const Comparison& c);

}  // namespace chipletfp
