#include "rosterlab/reroster/reroster.hpp"

#include <cmath>
#include <numeric>

#include "../roster/pattern_rules.hpp"
#include "rosterlab/roster/oracle.hpp"

namespace rosterlab {

using mip::LinExpr;
using mip::Sense;
using mip::VarId;

int ChangeCounts::total_shift() const { return std::accumulate(shift.begin(), shift.end(), 0); }
int ChangeCounts::total_reserve() const {
  return std::accumulate(reserve.begin(), reserve.end(), 0);
}
int ChangeCounts::total_dayoff() const { return std::accumulate(dayoff.begin(), dayoff.end(), 0); }

namespace {

std::string label(const char* base, int a, int b) {
  return std::string(base) + "[" + std::to_string(a) + "," + std::to_string(b) + "]";
}
std::string label(const char* base, int a, int b, int c) {
  return std::string(base) + "[" + std::to_string(a) + "," + std::to_string(b) + "," +
         std::to_string(c) + "]";
}

LinExpr scaled(const LinExpr& e, double factor) {
  LinExpr out;
  for (const auto& t : e.terms()) out.add(t.var, t.coef * factor);
  out.add_constant(e.constant() * factor);
  return out;
}

void check_dimensions(const ProblemInstance& inst, const Roster& original,
                      const AbsenceScenario& scenario) {
  if (scenario.num_employees() != inst.num_employees() || scenario.num_days() != inst.days) {
    throw InstanceError("scenario", "dimensions do not match the instance");
  }
  if (original.assignment.num_employees() != inst.num_employees() ||
      original.assignment.num_days() != inst.days) {
    throw InstanceError("roster", "dimensions do not match the instance");
  }
}

struct CellChange {
  int shift = 0;
  int reserve = 0;
  int dayoff = 0;
  bool legal = true;
};

// Change counts of one cell from original shift `a` to new shift `b`.
CellChange cell_change(int res, int a, int b) {
  const bool a_off = a == kOff;
  const bool b_off = b == kOff;
  const bool a_res = a == res;
  const bool b_res = b == res;
  if (a == b) return {};
  if (a_res) return b_off ? CellChange{0, 0, 0, false} : CellChange{0, 1, 0, true};
  if (a_off) return {0, 0, b_res ? 2 : 1, true};
  // a is a working shift
  if (b_off || b_res) return {0, 0, 1, true};
  return {1, 0, 0, true};
}

bool change_exempt(const AbsenceScenario& scenario, AbsenteeScope scope, int n, int d) {
  return scope == AbsenteeScope::kWholePeriod ? scenario.in_absent_set(n)
                                               : scenario.absent(n, d);
}

// Indicator formulation: yp = 1 when s is held in either roster, ypp = 1
// when in exactly one, yppp = 1 when the day differs at all; the three
// counts are bounded below through yppp.
void add_auxiliary_changes(mip::MipModel& m, const AssignmentVars& x, int n, int d, int orig,
                           int res, int S, VarId v2, VarId v3, VarId v4) {
  const auto c = [orig](int s) { return orig == s ? 1.0 : 0.0; };
  const double c_res = c(res);
  const double c_any = orig == kOff ? 0.0 : 1.0;
  const double c_work = (orig != kOff && orig != res) ? 1.0 : 0.0;
  const VarId yppp = m.add_binary(label("yppp", n, d));
  LinExpr any_diff;
  for (int s = 0; s < S; ++s) {
    const VarId yp = m.add_binary(label("yp", n, d, s));
    const VarId ypp = m.add_binary(label("ypp", n, d, s));
    LinExpr held = x.shift_on(n, d, s);
    held.add_constant(c(s));
    LinExpr upper = held;
    upper.add(yp, -2.0);
    m.add_constraint(label("chg_held", n, d, s), upper, Sense::kLessEqual, 0.0);
    LinExpr lower = held;
    lower.add(ypp, 1.0).add(yp, -2.0);
    m.add_constraint(label("chg_diff", n, d, s), lower, Sense::kGreaterEqual, 0.0);
    any_diff.add(ypp, 1.0);
  }
  any_diff.add(yppp, -2.0);
  m.add_constraint(label("chg_any", n, d), any_diff, Sense::kLessEqual, 0.0);

  LinExpr work_changes = x.working_on(n, d);
  work_changes.add_constant(c_work - 1.0);
  work_changes.add(v2, -1.0).add(yppp, 1.0);
  m.add_constraint(label("chg_shift", n, d), work_changes, Sense::kLessEqual, 1.0);

  LinExpr conversions = x.any_on(n, d);
  conversions.add_constant(c_res - 1.0);
  conversions.add(v3, -1.0).add(yppp, 1.0);
  m.add_constraint(label("chg_reserve", n, d), conversions, Sense::kLessEqual, 1.0);

  LinExpr dayoff = x.working_on(n, d);
  dayoff.add_constant(c_any + 2.0 * c_res);
  dayoff.add(v4, 1.0).add(yppp, -2.0);
  m.add_constraint(label("chg_dayoff", n, d), dayoff, Sense::kGreaterEqual, 0.0);
}

// The same counts written as exact linear functions of x, one case per
// original shift of the day.
void add_direct_changes(mip::MipModel& m, const AssignmentVars& x, int n, int d, int orig,
                        int res, int W, VarId v2, VarId v3, VarId v4) {
  LinExpr e2(v2);
  LinExpr e3(v3);
  LinExpr e4(v4);
  if (orig == kOff) {
    for (int s = 0; s < W; ++s) e4 += scaled(x.shift_on(n, d, s), -1.0);
    e4 += scaled(x.shift_on(n, d, res), -2.0);
  } else if (orig == res) {
    for (int s = 0; s < W; ++s) e3 += scaled(x.shift_on(n, d, s), -1.0);
  } else {
    for (int s = 0; s < W; ++s) {
      if (s != orig) e2 += scaled(x.shift_on(n, d, s), -1.0);
      e4 += x.shift_on(n, d, s);
    }
    e4.add_constant(-1.0);
  }
  m.add_constraint(label("chg_shift", n, d), e2, Sense::kEqual, 0.0);
  m.add_constraint(label("chg_reserve", n, d), e3, Sense::kEqual, 0.0);
  m.add_constraint(label("chg_dayoff", n, d), e4, Sense::kEqual, 0.0);
}

double weighted(const ProblemInstance& inst, const ChangeCounts& c) {
  double cost = 0.0;
  for (int n = 0; n < inst.num_employees(); ++n) {
    const auto& e = inst.employees[n];
    for (int d = 0; d < inst.days; ++d) {
      const auto i = c.index(n, d);
      cost += c.shift[i] * e.change_cost_shift + c.reserve[i] * e.change_cost_reserve +
              c.dayoff[i] * e.change_cost_dayoff;
    }
  }
  return cost;
}

}  // namespace

std::string to_string(AbsenteeScope scope) {
  return scope == AbsenteeScope::kWholePeriod ? "whole-period" : "absence-days";
}

AbsenteeScope parse_absentee_scope(const std::string& text) {
  if (text == "absence-days") return AbsenteeScope::kAbsenceDays;
  if (text == "whole-period") return AbsenteeScope::kWholePeriod;
  throw std::invalid_argument("unknown absentee scope '" + text + "'");
}

ReserveRequirement rerostering_reserve(const Roster& original, const RerosterOptions& options) {
  return options.keep_reserve_requirement
             ? original.reserve
             : ReserveRequirement::zeros(static_cast<int>(original.reserve.per_day.size()));
}

ChangeCounts count_changes(const ProblemInstance& inst, const AssignmentGrid& original,
                           const AssignmentGrid& repaired, const AbsenceScenario& scenario,
                           AbsenteeScope scope) {
  ChangeCounts out(inst.num_employees(), inst.days);
  const int res = inst.shifts.reserve_index();
  for (int n = 0; n < inst.num_employees(); ++n) {
    for (int d = 0; d < inst.days; ++d) {
      if (change_exempt(scenario, scope, n, d)) continue;
      const auto c = cell_change(res, original.at(n, d).shift, repaired.at(n, d).shift);
      if (!c.legal) {
        throw std::invalid_argument("reserve shift of employee " + std::to_string(n) +
                                    " on day " + std::to_string(d) + " turned into a day off");
      }
      const auto i = out.index(n, d);
      out.shift[i] = c.shift;
      out.reserve[i] = c.reserve;
      out.dayoff[i] = c.dayoff;
    }
  }
  return out;
}

RerosterResult evaluate_rerostering(const ProblemInstance& inst, const Roster& original,
                                    const AssignmentGrid& repaired,
                                    const AbsenceScenario& scenario,
                                    const RerosterOptions& options) {
  check_dimensions(inst, original, scenario);
  RerosterResult r;
  r.roster = evaluate_roster(inst, repaired, rerostering_reserve(original, options));
  r.changes = count_changes(inst, original.assignment, repaired, scenario, options.absentee_scope);
  r.costs.base_cost = r.roster.costs.total;
  r.costs.change_cost = weighted(inst, r.changes);
  r.costs.total = r.costs.base_cost + r.costs.change_cost;
  r.metrics.reserve_conversions = r.changes.total_reserve();
  r.metrics.working_shift_changes = r.changes.total_shift();
  r.metrics.dayoff_changes = r.changes.total_dayoff();
  const int scheduled = original.reserve_shifts();
  r.metrics.pct_reserves_converted =
      scheduled == 0 ? 0.0 : static_cast<double>(r.metrics.reserve_conversions) / scheduled;
  return r;
}

RerosteringModel build_rerostering_model(const ProblemInstance& inst, const Roster& original,
                                         const AbsenceScenario& scenario,
                                         const RerosterOptions& options) {
  check_dimensions(inst, original, scenario);
  const auto reserve = rerostering_reserve(original, options);
  RerosteringModel rm;
  auto& m = rm.model;
  rm.x = AssignmentVars(m, inst);
  const auto& x = rm.x;
  const int N = inst.num_employees();
  const int D = inst.days;
  const int S = inst.shifts.num_shifts();
  const int W = inst.shifts.num_working();
  const int K = inst.num_skills();
  const int res = inst.shifts.reserve_index();

  // Rostering objective terms on the new assignment.
  for (int n = 0; n < N; ++n) {
    const auto& e = inst.employees[n];
    for (int d = 0; d < D; ++d) {
      for (int s = 0; s < S; ++s) {
        for (int k : e.skills) {
          m.add_objective_term(x.at(n, d, s, k), s == res ? e.reserve_wage : e.wage);
        }
      }
    }
  }
  for (int d = 0; d < D; ++d) {
    for (int s = 0; s < W; ++s) {
      for (int k = 0; k < K; ++k) {
        const int need = inst.demand_at(d, s, k);
        if (need <= 0) continue;
        const VarId v6 = m.add_continuous(label("v6", d, s, k));
        m.add_objective_term(v6, inst.understaff_cost);
        LinExpr cover(v6);
        for (int n = 0; n < N; ++n) {
          if (x.has(n, d, s, k)) cover.add(x.at(n, d, s, k), 1.0);
        }
        m.add_constraint(label("demand", d, s, k), cover, Sense::kGreaterEqual, need);
      }
    }
  }
  const auto overtime = add_contract_constraints(m, inst, x, false);
  for (int n = 0; n < N; ++n) m.add_objective_term(overtime[n], inst.employees[n].overtime_wage);
  for (int d = 0; d < D; ++d) {
    if (reserve.per_day[d] == 0) continue;
    const VarId vr = m.add_continuous("vr[" + std::to_string(d) + "]");
    m.add_objective_term(vr, inst.reserve_shortfall_penalty);
    LinExpr lhs(vr);
    for (int n = 0; n < N; ++n) lhs += x.shift_on(n, d, res);
    m.add_constraint("reserve_req[" + std::to_string(d) + "]", lhs, Sense::kGreaterEqual,
                     reserve.per_day[d]);
  }

  // One shift per day, none on an absence day.
  for (int n = 0; n < N; ++n) {
    for (int d = 0; d < D; ++d) {
      m.add_constraint(label("one_shift", n, d), x.any_on(n, d), Sense::kLessEqual,
                       scenario.absent(n, d) ? 0.0 : 1.0);
    }
  }

  // Change accounting on every cell the scope covers. c(s) is the original
  // indicator of shift s on the day.
  const std::size_t cells = static_cast<std::size_t>(N) * D;
  rm.shift_changes.assign(cells, VarId{});
  rm.reserve_conversions.assign(cells, VarId{});
  rm.dayoff_changes.assign(cells, VarId{});
  for (int n = 0; n < N; ++n) {
    const auto& e = inst.employees[n];
    for (int d = 0; d < D; ++d) {
      if (change_exempt(scenario, options.absentee_scope, n, d)) continue;
      const int orig = original.assignment.at(n, d).shift;
      const VarId v2 = m.add_continuous(label("v2", n, d));
      const VarId v3 = m.add_continuous(label("v3", n, d));
      const VarId v4 = m.add_continuous(label("v4", n, d));
      rm.shift_changes[static_cast<std::size_t>(n) * D + d] = v2;
      rm.reserve_conversions[static_cast<std::size_t>(n) * D + d] = v3;
      rm.dayoff_changes[static_cast<std::size_t>(n) * D + d] = v4;
      m.add_objective_term(v2, e.change_cost_shift);
      m.add_objective_term(v3, e.change_cost_reserve);
      m.add_objective_term(v4, e.change_cost_dayoff);
      if (orig == res) {
        m.add_constraint(label("keep_reserve", n, d), x.any_on(n, d), Sense::kGreaterEqual, 1.0);
      }
      if (options.change_model == ChangeModel::kAuxiliary) {
        add_auxiliary_changes(m, x, n, d, orig, res, S, v2, v3, v4);
      } else {
        add_direct_changes(m, x, n, d, orig, res, W, v2, v3, v4);
      }
    }
  }
  return rm;
}

RerosterResult solve_rerostering(const ProblemInstance& inst, const Roster& original,
                                 const AbsenceScenario& scenario,
                                 const mip::SolveControls& controls,
                                 const RerosterOptions& options) {
  const auto rm = build_rerostering_model(inst, original, scenario, options);
  const auto outcome = mip::solve(rm.model, controls);
  if (!outcome.has_solution()) {
    throw SolveError(outcome.status, "rerostering: " + mip::to_string(outcome.status) +
                                         (outcome.message.empty() ? "" : " (" + outcome.message + ")"));
  }
  auto result = evaluate_rerostering(inst, original, rm.x.extract(outcome), scenario, options);
  result.roster.solve = {outcome.status, outcome.objective_value, outcome.gap, outcome.wall_time};
  const double tol = mip::objective_tolerance(outcome.objective_value);
  if (result.costs.total > outcome.objective_value + tol) {
    throw std::logic_error("rerostering: recomputed cost " + std::to_string(result.costs.total) +
                           " exceeds solver objective " +
                           std::to_string(outcome.objective_value));
  }
  return result;
}

RerosterOracleResult enumerate_rerostering(const ProblemInstance& inst, const Roster& original,
                                           const AbsenceScenario& scenario,
                                           const RerosterOptions& options) {
  check_enumeration_guard(inst);
  check_dimensions(inst, original, scenario);
  const auto reserve = rerostering_reserve(original, options).per_day;
  const int N = inst.num_employees();
  const int D = inst.days;
  const int res = inst.shifts.reserve_index();
  const std::size_t cells = static_cast<std::size_t>(N) * D;

  // Absence days are pinned off; every other cell ranges over all shifts.
  std::vector<std::size_t> free_cells;
  for (int n = 0; n < N; ++n) {
    for (int d = 0; d < D; ++d) {
      if (!scenario.absent(n, d)) free_cells.push_back(static_cast<std::size_t>(n) * D + d);
    }
  }
  detail::Pattern p(cells, kOff);
  std::vector<int> skills(cells, -1);
  RerosterOracleResult best;
  while (true) {
    double cost = detail::base_cost(inst, p, reserve, skills);
    bool legal = true;
    for (int n = 0; n < N && legal; ++n) {
      const auto& e = inst.employees[n];
      for (int d = 0; d < D && legal; ++d) {
        if (change_exempt(scenario, options.absentee_scope, n, d)) continue;
        const auto c = cell_change(res, original.assignment.at(n, d).shift,
                                   detail::cell(p, D, n, d));
        legal = c.legal;
        cost += c.shift * e.change_cost_shift + c.reserve * e.change_cost_reserve +
                c.dayoff * e.change_cost_dayoff;
      }
    }
    if (legal && (!best.feasible || cost < best.cost - 1e-9)) {
      bool ok = true;
      for (int n = 0; n < N && ok; ++n) {
        ok = detail::sequence_ok(inst, p, n) && detail::totals_ok(inst, p, n);
      }
      if (ok) {
        best.feasible = true;
        best.cost = cost;
        best.assignment = detail::to_grid(inst, p, skills);
      }
    }
    std::size_t i = 0;
    for (; i < free_cells.size(); ++i) {
      int& c = p[free_cells[i]];
      if (c < res) {
        ++c;
        break;
      }
      c = kOff;
    }
    if (i == free_cells.size()) break;
  }
  return best;
}

nlohmann::ordered_json reroster_to_json(const ProblemInstance& inst, const RerosterResult& r) {
  auto doc = roster_to_json(inst, r.roster);
  doc["costs"]["base_cost"] = r.costs.base_cost;
  doc["costs"]["change_cost"] = r.costs.change_cost;
  doc["costs"]["reroster_total"] = r.costs.total;
  auto changes = nlohmann::ordered_json::array();
  for (int n = 0; n < inst.num_employees(); ++n) {
    for (int d = 0; d < inst.days; ++d) {
      const auto i = r.changes.index(n, d);
      if (r.changes.shift[i] + r.changes.reserve[i] + r.changes.dayoff[i] == 0) continue;
      changes.push_back({{"employee", n},
                         {"day", d},
                         {"v2", r.changes.shift[i]},
                         {"v3", r.changes.reserve[i]},
                         {"v4", r.changes.dayoff[i]}});
    }
  }
  doc["changes"] = changes;
  doc["metrics"] = {{"pct_reserves_converted", r.metrics.pct_reserves_converted},
                    {"reserve_conversions", r.metrics.reserve_conversions},
                    {"working_shift_changes", r.metrics.working_shift_changes},
                    {"dayoff_changes", r.metrics.dayoff_changes}};
  return doc;
}

}  // namespace rosterlab
