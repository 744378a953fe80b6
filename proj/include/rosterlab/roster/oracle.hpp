#pragma once

#include "rosterlab/core/types.hpp"
#include "rosterlab/roster/roster.hpp"

namespace rosterlab {

/// Instances larger than this are refused by the exhaustive enumerators.
struct EnumerationGuard {
  static constexpr int kMaxEmployees = 3;
  static constexpr int kMaxDays = 3;
  static constexpr int kMaxWorkingShifts = 2;
  static constexpr int kMaxSkills = 2;
};

/// Throws std::invalid_argument if the instance exceeds EnumerationGuard.
void check_enumeration_guard(const ProblemInstance& instance);

struct OracleResult {
  bool feasible = false;
  double cost = 0.0;
  AssignmentGrid assignment;  // one optimal assignment when feasible
};

/// Exact robust rostering optimum by enumerating every per-(employee, day)
/// choice of day off, reserve or working shift, with skills chosen per shift
/// to minimise understaffing. Hard rules and the single-conversion safety of
/// every reserve shift are evaluated directly on each candidate. Independent
/// of the MIP formulation.
OracleResult oracle_enumerate(const ProblemInstance& instance, const ReserveRequirement& reserve);

}  // namespace rosterlab
