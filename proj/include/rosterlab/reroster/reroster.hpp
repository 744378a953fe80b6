#pragma once

#include <json.hpp>

#include "rosterlab/core/types.hpp"
#include "rosterlab/mip/solver.hpp"
#include "rosterlab/roster/roster.hpp"
#include "rosterlab/roster/rostering_model.hpp"

namespace rosterlab {

/// Cells exempt from change accounting and from keeping reserves.
enum class AbsenteeScope {
  kAbsenceDays,  // only the days an employee is absent
  kWholePeriod,  // every day of an employee with at least one absence
};

/// How change counts enter the model. Both give the same optimum.
enum class ChangeModel {
  kDirect,     // counts as linear functions of x per original shift
  kAuxiliary,  // binary indicators yp, ypp, yppp bounding the counts
};

struct RerosterOptions {
  /// Keep the original roster's reserve requirement (and its shortfall
  /// penalty) in the objective instead of dropping it to zero.
  bool keep_reserve_requirement = false;
  AbsenteeScope absentee_scope = AbsenteeScope::kAbsenceDays;
  ChangeModel change_model = ChangeModel::kDirect;
};

std::string to_string(AbsenteeScope scope);
AbsenteeScope parse_absentee_scope(const std::string& text);

/// Dense [employee][day] change counts against the original roster.
struct ChangeCounts {
  int employees = 0;
  int days = 0;
  std::vector<int> shift;    // working shift to another working shift (v2)
  std::vector<int> reserve;  // reserve converted into a working shift (v3)
  std::vector<int> dayoff;   // day-off related changes (v4)

  ChangeCounts() = default;
  ChangeCounts(int n, int d)
      : employees(n), days(d),
        shift(static_cast<std::size_t>(n) * d, 0),
        reserve(static_cast<std::size_t>(n) * d, 0),
        dayoff(static_cast<std::size_t>(n) * d, 0) {}
  std::size_t index(int n, int d) const { return static_cast<std::size_t>(n) * days + d; }
  int total_shift() const;
  int total_reserve() const;
  int total_dayoff() const;
  bool operator==(const ChangeCounts&) const = default;
};

struct RerosterCosts {
  double base_cost = 0.0;    // rostering objective terms of the repaired roster
  double change_cost = 0.0;  // weighted change counts
  double total = 0.0;
};

struct RerosterMetrics {
  double pct_reserves_converted = 0.0;  // fraction of original reserves converted, 0 if none
  int reserve_conversions = 0;
  int working_shift_changes = 0;
  int dayoff_changes = 0;
};

struct RerosterResult {
  Roster roster;  // repaired roster, costed against the rerostering reserve requirement
  ChangeCounts changes;
  RerosterCosts costs;
  RerosterMetrics metrics;
};

/// Reserve requirement used inside the rerostering objective.
ReserveRequirement rerostering_reserve(const Roster& original, const RerosterOptions& options);

/// Per-cell change counts outside the exempt cells. For an original
/// and new assignment: off to reserve counts two day-off changes; off to
/// work, work to off and work to reserve one; reserve to work one reserve
/// conversion; a different working shift one shift change; the same shift
/// (any skill) none. Reserve to off is not a legal repair and throws.
ChangeCounts count_changes(const ProblemInstance& instance, const AssignmentGrid& original,
                           const AssignmentGrid& repaired, const AbsenceScenario& scenario,
                           AbsenteeScope scope = AbsenteeScope::kAbsenceDays);

/// Costs and metrics of a given repair, computed directly from the grids.
RerosterResult evaluate_rerostering(const ProblemInstance& instance, const Roster& original,
                                    const AssignmentGrid& repaired,
                                    const AbsenceScenario& scenario,
                                    const RerosterOptions& options = {});

/// Variables x[n,d,s,k], v2[n,d], v3[n,d], v4[n,d] plus v5, v6 and vr as in
/// the rostering model; the auxiliary change model adds yp[n,d,s],
/// ypp[n,d,s] and yppp[n,d]. Change variables exist only on cells outside
/// the absentee scope.
struct RerosteringModel {
  mip::MipModel model;
  AssignmentVars x;
  std::vector<mip::VarId> shift_changes;  // dense [n][d], invalid on exempt cells
  std::vector<mip::VarId> reserve_conversions;
  std::vector<mip::VarId> dayoff_changes;
};

RerosteringModel build_rerostering_model(const ProblemInstance& instance, const Roster& original,
                                         const AbsenceScenario& scenario,
                                         const RerosterOptions& options = {});

/// Solves the rerostering problem. Change counts and costs are recomputed
/// from the grids and the cost is checked against the solver objective.
/// Throws SolveError without an incumbent.
RerosterResult solve_rerostering(const ProblemInstance& instance, const Roster& original,
                                 const AbsenceScenario& scenario,
                                 const mip::SolveControls& controls = {},
                                 const RerosterOptions& options = {});

struct RerosterOracleResult {
  bool feasible = false;
  double cost = 0.0;
  AssignmentGrid assignment;
};

/// Exhaustive rerostering optimum within the enumeration guard, using the
/// change rules of count_changes directly.
RerosterOracleResult enumerate_rerostering(const ProblemInstance& instance,
                                           const Roster& original,
                                           const AbsenceScenario& scenario,
                                           const RerosterOptions& options = {});

nlohmann::ordered_json reroster_to_json(const ProblemInstance& instance,
                                        const RerosterResult& result);

}  // namespace rosterlab
