#include "rosterlab/roster/roster.hpp"

#include <algorithm>

namespace rosterlab {

using nlohmann::json;
using nlohmann::ordered_json;

int Roster::working_days(int employee) const {
  int count = 0;
  for (int d = 0; d < assignment.num_days(); ++d) {
    const int s = assignment.at(employee, d).shift;
    count += (s != kOff && s != reserve_shift) ? 1 : 0;
  }
  return count;
}

int Roster::reserve_shifts() const {
  int count = 0;
  for (int d = 0; d < assignment.num_days(); ++d) count += reserve_shifts_on(d);
  return count;
}

int Roster::reserve_shifts_on(int day) const {
  int count = 0;
  for (int n = 0; n < assignment.num_employees(); ++n) {
    count += assignment.at(n, day).shift == reserve_shift ? 1 : 0;
  }
  return count;
}

Roster evaluate_roster(const ProblemInstance& inst, const AssignmentGrid& assignment,
                       const ReserveRequirement& reserve) {
  validate(reserve, inst);
  const int n_emp = inst.num_employees();
  const int n_work = inst.shifts.num_working();
  const int res = inst.shifts.reserve_index();
  if (assignment.num_employees() != n_emp || assignment.num_days() != inst.days) {
    throw InstanceError("roster", "assignment dimensions do not match the instance");
  }

  Roster r;
  r.assignment = assignment;
  r.reserve = reserve;
  r.reserve_shift = res;
  r.overtime.assign(n_emp, 0);
  r.understaffing.assign(inst.demand.size(), 0);
  r.reserve_shortfall.assign(inst.days, 0);

  std::vector<int> covered(inst.demand.size(), 0);
  std::vector<int> reserves_on(inst.days, 0);
  for (int n = 0; n < n_emp; ++n) {
    const auto& e = inst.employees[n];
    int worked = 0;
    for (int d = 0; d < inst.days; ++d) {
      const auto& a = assignment.at(n, d);
      if (a.shift == kOff) continue;
      if (a.shift == res) {
        ++reserves_on[d];
        r.costs.reserve_wages += e.reserve_wage;
      } else {
        ++worked;
        r.costs.wages += e.wage;
        ++covered[(static_cast<std::size_t>(d) * n_work + a.shift) * inst.num_skills() + a.skill];
      }
    }
    r.overtime[n] = std::max(0, worked - e.max_work_days);
    r.costs.overtime_cost += r.overtime[n] * e.overtime_wage;
  }
  for (std::size_t i = 0; i < inst.demand.size(); ++i) {
    r.understaffing[i] = std::max(0, inst.demand[i] - covered[i]);
    r.costs.understaff_cost += r.understaffing[i] * inst.understaff_cost;
  }
  for (int d = 0; d < inst.days; ++d) {
    r.reserve_shortfall[d] = std::max(0, reserve.per_day[d] - reserves_on[d]);
    r.costs.shortfall_penalty += r.reserve_shortfall[d] * inst.reserve_shortfall_penalty;
  }
  r.costs.total = r.costs.wages + r.costs.overtime_cost + r.costs.understaff_cost +
                  r.costs.reserve_wages + r.costs.shortfall_penalty;
  return r;
}

ordered_json costs_to_json(const RosterCosts& c) {
  ordered_json j;
  j["wages"] = c.wages;
  j["overtime_cost"] = c.overtime_cost;
  j["understaff_cost"] = c.understaff_cost;
  j["reserve_wages"] = c.reserve_wages;
  j["shortfall_penalty"] = c.shortfall_penalty;
  j["total"] = c.total;
  return j;
}

ordered_json roster_to_json(const ProblemInstance& inst, const Roster& roster) {
  ordered_json doc;
  doc["assignments"] = ordered_json::array();
  for (int n = 0; n < inst.num_employees(); ++n) {
    for (int d = 0; d < inst.days; ++d) {
      const auto& a = roster.assignment.at(n, d);
      if (a.is_off()) continue;
      doc["assignments"].push_back(
          {{"employee", n}, {"day", d}, {"shift", a.shift}, {"skill", a.skill}});
    }
  }
  doc["reserve"] = roster.reserve.per_day;
  doc["costs"] = costs_to_json(roster.costs);
  ordered_json slacks;
  slacks["overtime"] = ordered_json::array();
  for (int n = 0; n < inst.num_employees(); ++n) {
    if (roster.overtime[n] > 0) {
      slacks["overtime"].push_back({{"employee", n}, {"amount", roster.overtime[n]}});
    }
  }
  slacks["understaffing"] = ordered_json::array();
  for (int d = 0; d < inst.days; ++d) {
    for (int s = 0; s < inst.shifts.num_working(); ++s) {
      for (int k = 0; k < inst.num_skills(); ++k) {
        const int v =
            roster.understaffing[(static_cast<std::size_t>(d) * inst.shifts.num_working() + s) *
                                     inst.num_skills() +
                                 k];
        if (v > 0) {
          slacks["understaffing"].push_back(
              {{"day", d}, {"shift", s}, {"skill", k}, {"amount", v}});
        }
      }
    }
  }
  slacks["reserve_shortfall"] = ordered_json::array();
  for (int d = 0; d < inst.days; ++d) {
    if (roster.reserve_shortfall[d] > 0) {
      slacks["reserve_shortfall"].push_back({{"day", d}, {"amount", roster.reserve_shortfall[d]}});
    }
  }
  doc["slacks"] = slacks;
  doc["solve"] = {{"status", mip::to_string(roster.solve.status)},
                  {"objective", roster.solve.objective},
                  {"gap", roster.solve.gap},
                  {"wall_time", roster.solve.wall_time}};
  return doc;
}

Roster roster_from_json(const ProblemInstance& inst, const json& doc) {
  AssignmentGrid grid(inst.num_employees(), inst.days);
  const auto& list = doc.at("assignments");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& a = list[i];
    const int n = a.at("employee").get<int>();
    const int d = a.at("day").get<int>();
    const int s = a.at("shift").get<int>();
    const int k = a.at("skill").get<int>();
    const std::string path = "assignments[" + std::to_string(i) + "]";
    if (n < 0 || n >= inst.num_employees() || d < 0 || d >= inst.days) {
      throw InstanceError(path, "index out of range");
    }
    if (s < 0 || s >= inst.shifts.num_shifts() || k < 0 || k >= inst.num_skills()) {
      throw InstanceError(path, "shift or skill out of range");
    }
    if (!grid.at(n, d).is_off()) {
      throw InstanceError(path, "second assignment on the same day");
    }
    grid.at(n, d) = {s, k};
  }
  ReserveRequirement reserve{doc.at("reserve").get<std::vector<int>>()};
  Roster r = evaluate_roster(inst, grid, reserve);
  if (doc.contains("solve")) {
    const auto& s = doc.at("solve");
    const auto status = s.at("status").get<std::string>();
    for (auto st : {mip::SolveStatus::kOptimal, mip::SolveStatus::kFeasibleGap,
                    mip::SolveStatus::kInfeasible, mip::SolveStatus::kTimeLimit,
                    mip::SolveStatus::kError}) {
      if (mip::to_string(st) == status) r.solve.status = st;
    }
    r.solve.objective = s.at("objective").get<double>();
    r.solve.gap = s.at("gap").get<double>();
    r.solve.wall_time = s.at("wall_time").get<double>();
  }
  return r;
}

}  // namespace rosterlab
