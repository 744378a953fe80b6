#include "rosterlab/roster/constraints.hpp"

namespace rosterlab {

AssignmentTensor::AssignmentTensor(const AssignmentGrid& grid)
    : AssignmentTensor(grid.num_employees(), grid.num_days()) {
  for (int n = 0; n < employees_; ++n) {
    for (int d = 0; d < days_; ++d) {
      if (!grid.at(n, d).is_off()) at(n, d).push_back(grid.at(n, d));
    }
  }
}

std::string to_string(Rule rule) {
  switch (rule) {
    case Rule::kQualification: return "qualification";
    case Rule::kOneShiftPerDay: return "one-shift-per-day";
    case Rule::kForbiddenSuccession: return "forbidden-succession";
    case Rule::kConsecutiveWork: return "consecutive-work";
    case Rule::kConsecutiveNights: return "consecutive-nights";
    case Rule::kUndesired: return "undesired";
    case Rule::kMinWorkDays: return "min-work-days";
    case Rule::kReserveCap: return "reserve-cap";
  }
  return "unknown";
}

namespace {

// Shifts held on day `day`, which may be a history day.
std::vector<int> shifts_on(const ProblemInstance& inst, const AssignmentTensor& roster, int n,
                           int day) {
  std::vector<int> out;
  if (day < 0) {
    const int h = inst.history_shift(n, day);
    if (h != kOff) out.push_back(h);
  } else {
    for (const auto& a : roster.at(n, day)) out.push_back(a.shift);
  }
  return out;
}

// Reports the first period day on which a run of flagged days exceeds `limit`,
// once per run.
void check_runs(const ProblemInstance& inst, const AssignmentTensor& roster, int n, int limit,
                bool nights_only, Rule rule, std::vector<Violation>& out) {
  const int start = -inst.history_depth();
  int run = 0;
  bool reported = false;
  for (int d = start; d < inst.days; ++d) {
    bool flagged = false;
    for (int s : shifts_on(inst, roster, n, d)) {
      flagged = flagged || (nights_only ? s == inst.shifts.night : true);
    }
    if (!flagged) {
      run = 0;
      reported = false;
      continue;
    }
    ++run;
    if (run > limit && d >= 0 && !reported) {
      out.push_back({rule, n, d, std::to_string(run) + " in a row, limit " + std::to_string(limit)});
      reported = true;
    }
  }
}

}  // namespace

std::vector<Violation> check_hard_constraints(const ProblemInstance& inst,
                                              const AssignmentTensor& roster,
                                              const CheckOptions& options) {
  if (roster.num_employees() != inst.num_employees() || roster.num_days() != inst.days) {
    throw InstanceError("roster", "assignment dimensions do not match the instance");
  }
  std::vector<Violation> out;
  const int res = inst.shifts.reserve_index();
  for (int n = 0; n < inst.num_employees(); ++n) {
    const auto& e = inst.employees[n];
    int worked = 0;
    int reserves = 0;
    for (int d = 0; d < inst.days; ++d) {
      const auto& cell = roster.at(n, d);
      if (cell.size() > 1) {
        out.push_back({Rule::kOneShiftPerDay, n, d, std::to_string(cell.size()) + " shifts"});
      }
      for (const auto& a : cell) {
        if (!e.qualified(a.skill)) {
          out.push_back({Rule::kQualification, n, d, "skill " + std::to_string(a.skill)});
        }
        if (inst.is_undesired(n, d, a.shift)) {
          out.push_back({Rule::kUndesired, n, d, "shift " + inst.shifts.name(a.shift)});
        }
        if (a.shift == res) {
          ++reserves;
        } else {
          ++worked;
        }
      }
    }
    for (int d = -1; d + 1 < inst.days; ++d) {
      for (int a : shifts_on(inst, roster, n, d)) {
        for (int b : shifts_on(inst, roster, n, d + 1)) {
          if (inst.shifts.forbidden(a, b)) {
            out.push_back({Rule::kForbiddenSuccession, n, d + 1,
                           inst.shifts.name(a) + " -> " + inst.shifts.name(b)});
          }
        }
      }
    }
    check_runs(inst, roster, n, e.max_consecutive_work, false, Rule::kConsecutiveWork, out);
    check_runs(inst, roster, n, e.max_consecutive_nights, true, Rule::kConsecutiveNights, out);
    if (options.min_work_days && worked < e.min_work_days) {
      out.push_back({Rule::kMinWorkDays, n, -1,
                     std::to_string(worked) + " < " + std::to_string(e.min_work_days)});
    }
    if (options.reserve_cap && reserves > e.max_reserve_shifts) {
      out.push_back({Rule::kReserveCap, n, -1,
                     std::to_string(reserves) + " > " + std::to_string(e.max_reserve_shifts)});
    }
  }
  return out;
}

std::vector<Violation> check_hard_constraints(const ProblemInstance& inst,
                                              const AssignmentGrid& roster,
                                              const CheckOptions& options) {
  return check_hard_constraints(inst, AssignmentTensor(roster), options);
}

std::vector<ConversionViolation> check_conversion_safety(const ProblemInstance& inst,
                                                         const AssignmentTensor& roster) {
  std::vector<ConversionViolation> out;
  const int res = inst.shifts.reserve_index();
  const CheckOptions per_day_rules{false, false};
  AssignmentTensor work = roster;
  for (int n = 0; n < inst.num_employees(); ++n) {
    for (int d = 0; d < inst.days; ++d) {
      auto& cell = work.at(n, d);
      for (std::size_t i = 0; i < cell.size(); ++i) {
        if (cell[i].shift != res) continue;
        const Assignment original = cell[i];
        for (int s = 0; s < inst.shifts.num_working(); ++s) {
          for (int k : inst.employees[n].skills) {
            cell[i] = {s, k};
            for (auto& v : check_hard_constraints(inst, work, per_day_rules)) {
              out.push_back({n, d, s, k, std::move(v)});
            }
          }
        }
        cell[i] = original;
      }
    }
  }
  return out;
}

std::vector<ConversionViolation> check_conversion_safety(const ProblemInstance& inst,
                                                         const AssignmentGrid& roster) {
  return check_conversion_safety(inst, AssignmentTensor(roster));
}

}  // namespace rosterlab
