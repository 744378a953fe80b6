#include "rosterlab/roster/oracle.hpp"

#include <stdexcept>

#include "pattern_rules.hpp"

namespace rosterlab {

void check_enumeration_guard(const ProblemInstance& inst) {
  using G = EnumerationGuard;
  if (inst.num_employees() > G::kMaxEmployees || inst.days > G::kMaxDays ||
      inst.shifts.num_working() > G::kMaxWorkingShifts || inst.num_skills() > G::kMaxSkills) {
    throw std::invalid_argument(
        "instance too large to enumerate (limits: 3 employees, 3 days, 2 working shifts, 2 skills)");
  }
}

OracleResult oracle_enumerate(const ProblemInstance& inst, const ReserveRequirement& reserve) {
  check_enumeration_guard(inst);
  validate(reserve, inst);
  const std::size_t cells = static_cast<std::size_t>(inst.num_employees()) * inst.days;
  detail::Pattern p(cells, kOff);
  std::vector<int> skills(cells, -1);
  OracleResult best;
  do {
    const double cost = detail::base_cost(inst, p, reserve.per_day, skills);
    if (best.feasible && cost >= best.cost - 1e-9) continue;
    bool ok = true;
    for (int n = 0; n < inst.num_employees() && ok; ++n) {
      ok = detail::sequence_ok(inst, p, n) && detail::totals_ok(inst, p, n) &&
           detail::conversions_safe(inst, p, n);
    }
    if (!ok) continue;
    best.feasible = true;
    best.cost = cost;
    best.assignment = detail::to_grid(inst, p, skills);
  } while (detail::next_pattern(inst, p));
  return best;
}

}  // namespace rosterlab
