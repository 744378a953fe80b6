#pragma once

#include <json.hpp>

#include "rosterlab/core/types.hpp"
#include "rosterlab/mip/solver.hpp"

namespace rosterlab {

struct RosterCosts {
  double wages = 0.0;
  double overtime_cost = 0.0;
  double understaff_cost = 0.0;
  double reserve_wages = 0.0;
  double shortfall_penalty = 0.0;
  double total = 0.0;
};

struct SolveStats {
  mip::SolveStatus status = mip::SolveStatus::kOptimal;
  double objective = 0.0;
  double gap = 0.0;
  double wall_time = 0.0;
};

/// A roster together with the slacks and cost terms implied by it. Slacks are
/// always recomputed from the assignment (closed form), never copied from a
/// solver, so a Roster is self-consistent by construction.
struct Roster {
  AssignmentGrid assignment;
  ReserveRequirement reserve;        // c* the roster was evaluated against
  std::vector<int> overtime;         // per employee
  std::vector<int> understaffing;    // dense [day][working shift][skill]
  std::vector<int> reserve_shortfall;  // per day
  RosterCosts costs;
  SolveStats solve;                  // provenance when produced by a solver
  int reserve_shift = -2;            // index of the reserve shift in the catalog

  int working_days(int employee) const;
  int reserve_shifts() const;
  int reserve_shifts_on(int day) const;
};

/// Builds a Roster from an assignment: slacks in closed form and every cost
/// term of the robust rostering objective.
Roster evaluate_roster(const ProblemInstance& instance, const AssignmentGrid& assignment,
                       const ReserveRequirement& reserve);

/// Assignments, costs and slacks; deterministic field order.
nlohmann::ordered_json roster_to_json(const ProblemInstance& instance, const Roster& roster);
/// Reads the assignment and reserve requirement back and re-evaluates costs.
Roster roster_from_json(const ProblemInstance& instance, const nlohmann::json& doc);

nlohmann::ordered_json costs_to_json(const RosterCosts& costs);

}  // namespace rosterlab
