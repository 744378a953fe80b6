#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "rosterlab/core/types.hpp"

namespace rosterlab {

// Instance documents are JSON with top-level keys employees, days, skills,
// shifts {working, reserve, night, forbidden_successions}, demand (list of
// {day, shift, skill, min}), undesired, history and costs {understaff,
// reserve_shortfall}. Every reference is a 0-based integer index; history
// days are negative. Shift indices follow ShiftCatalog (reserve = |S_w|).

/// Parses and validates. Throws InstanceError with the path of the offending
/// field on schema or semantic violations.
ProblemInstance instance_from_json(const nlohmann::json& doc);
nlohmann::ordered_json instance_to_json(const ProblemInstance& instance);

ProblemInstance load_instance(const std::filesystem::path& path);
void save_instance(const ProblemInstance& instance, const std::filesystem::path& path);

nlohmann::ordered_json reserve_to_json(const ReserveRequirement& reserve);
ReserveRequirement reserve_from_json(const nlohmann::json& doc);

/// Sparse list of absent (employee, day) pairs plus seed metadata.
nlohmann::ordered_json scenario_to_json(const AbsenceScenario& scenario);
AbsenceScenario scenario_from_json(const nlohmann::json& doc);

}  // namespace rosterlab
