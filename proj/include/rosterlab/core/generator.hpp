#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rosterlab/core/types.hpp"

namespace rosterlab {

enum class SkillMode { kUniform, kHierarchical };

SkillMode parse_skill_mode(const std::string& text);
std::string to_string(SkillMode mode);

/// Shape of a generated ward instance. Defaults give 35 nurses over four
/// weeks with early/day/late/night shifts plus the reserve shift.
struct GeneratorConfig {
  int employees = 35;
  int days = 28;
  SkillMode skill_mode = SkillMode::kUniform;
  // head nurse, nurse, caretaker, trainee (hierarchical mode only)
  std::array<int, 4> type_counts = {5, 14, 10, 6};
  std::array<double, 4> wage_table = {100.0, 70.0, 50.0, 30.0};
  double uniform_wage = 100.0;
  // Total staff required per working shift and day, drawn uniformly.
  int demand_min_per_shift = 4;
  int demand_max_per_shift = 6;
  int max_consecutive_work = 6;
  int max_consecutive_nights = 4;
  int min_work_days = 16;
  int max_work_days = 20;
  int max_reserve_shifts = 4;
  int undesired_per_employee = 2;
  int history_days = 7;
  double reserve_shortfall_penalty = 1e3;
};

struct GeneratedInstance {
  ProblemInstance instance;
  std::vector<std::string> warnings;  // e.g. demand above contractual capacity
};

/// Deterministic in (config, seed). Throws std::invalid_argument when the
/// hierarchical type counts do not add up to the employee count.
GeneratedInstance generate_instance(const GeneratorConfig& config, std::uint64_t seed);

/// Applies the cost table: overtime 1.5x wage, reserve 0.1x, change costs
/// 1x / 0.1x / 1.5x wage, understaffing 5x the largest wage.
void apply_cost_table(ProblemInstance& instance, double reserve_shortfall_penalty = 1e3);

}  // namespace rosterlab
