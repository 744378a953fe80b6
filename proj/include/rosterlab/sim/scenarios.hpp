#pragma once

#include <cstdint>
#include <vector>

#include "rosterlab/core/types.hpp"

namespace rosterlab {

/// Evaluation scenario `index`: every employee-day absent with probability
/// rho, drawn from a stream derived from (seed, index) in the evaluation
/// seed domain, so any scenario can be regenerated on its own.
AbsenceScenario generate_scenario(int employees, int days, double rho, std::uint64_t seed,
                                  int index);

/// Scenarios 0..count-1 of the above. Throws std::invalid_argument for rho
/// outside [0, 1] or count < 1.
std::vector<AbsenceScenario> generate_scenarios(int employees, int days, double rho, int count,
                                                std::uint64_t seed);

/// Fixed policy: k reserve shifts on every day.
ReserveRequirement baseline_policy(int k, int days);

}  // namespace rosterlab
