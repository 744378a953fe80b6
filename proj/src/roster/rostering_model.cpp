#include "rosterlab/roster/rostering_model.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace rosterlab {

using mip::LinExpr;
using mip::MipModel;
using mip::Sense;
using mip::VarId;

namespace {

std::string label(const char* base, std::initializer_list<int> idx) {
  std::string out = base;
  out += '[';
  bool first = true;
  for (int i : idx) {
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  }
  out += ']';
  return out;
}

// Number of days in [from, to] (history days) on which employee n held a
// shift accepted by `pred`.
template <class Pred>
int history_count(const ProblemInstance& inst, int n, int from, int to, Pred pred) {
  int count = 0;
  for (int h = std::max(from, -inst.history_depth()); h <= to; ++h) {
    const int s = inst.history_shift(n, h);
    count += (s != kOff && pred(s)) ? 1 : 0;
  }
  return count;
}

}  // namespace

AssignmentVars::AssignmentVars(MipModel& model, const ProblemInstance& inst)
    : employees_(inst.num_employees()),
      days_(inst.days),
      shifts_(inst.shifts.num_shifts()),
      working_(inst.shifts.num_working()),
      skills_(inst.num_skills()),
      x_(static_cast<std::size_t>(employees_) * days_ * shifts_ * skills_) {
  for (int n = 0; n < employees_; ++n) {
    for (int d = 0; d < days_; ++d) {
      for (int s = 0; s < shifts_; ++s) {
        for (int k : inst.employees[n].skills) {
          x_[((static_cast<std::size_t>(n) * days_ + d) * shifts_ + s) * skills_ + k] =
              model.add_binary(label("x", {n, d, s, k}));
        }
      }
    }
  }
}

LinExpr AssignmentVars::shift_on(int n, int d, int s) const {
  LinExpr e;
  for (int k = 0; k < skills_; ++k) {
    if (has(n, d, s, k)) e.add(at(n, d, s, k), 1.0);
  }
  return e;
}

LinExpr AssignmentVars::any_on(int n, int d) const {
  LinExpr e;
  for (int s = 0; s < shifts_; ++s) e += shift_on(n, d, s);
  return e;
}

LinExpr AssignmentVars::working_on(int n, int d) const {
  LinExpr e;
  for (int s = 0; s < working_; ++s) e += shift_on(n, d, s);
  return e;
}

AssignmentGrid AssignmentVars::extract(const mip::SolveOutcome& outcome) const {
  AssignmentGrid grid(employees_, days_);
  for (int n = 0; n < employees_; ++n) {
    for (int d = 0; d < days_; ++d) {
      for (int s = 0; s < shifts_; ++s) {
        for (int k = 0; k < skills_; ++k) {
          if (has(n, d, s, k) && outcome.value(at(n, d, s, k)) > 0.5) grid.at(n, d) = {s, k};
        }
      }
    }
  }
  return grid;
}

std::vector<VarId> add_contract_constraints(MipModel& m, const ProblemInstance& inst,
                                            const AssignmentVars& x, bool conversion_safe) {
  const int D = inst.days;
  const int res = inst.shifts.reserve_index();
  const int night = inst.shifts.night;
  const auto is_night = [night](int s) { return s == night; };
  const auto any_shift = [](int) { return true; };

  std::vector<char> has_successor(inst.shifts.num_working(), 0);
  std::vector<char> has_predecessor(inst.shifts.num_working(), 0);
  for (const auto& [a, b] : inst.shifts.forbidden_successions) {
    has_successor[a] = 1;
    has_predecessor[b] = 1;
  }

  std::vector<VarId> overtime;
  for (int n = 0; n < inst.num_employees(); ++n) {
    const auto& e = inst.employees[n];

    // Forbidden successions, including the last history day.
    for (const auto& [a, b] : inst.shifts.forbidden_successions) {
      if (inst.history_shift(n, -1) == a) {
        m.add_constraint(label("succ_hist", {n, a, b}), x.shift_on(n, 0, b), Sense::kEqual, 0.0);
      }
      for (int d = 0; d + 1 < D; ++d) {
        LinExpr lhs = x.shift_on(n, d, a);
        lhs += x.shift_on(n, d + 1, b);
        m.add_constraint(label("succ", {n, d, a, b}), lhs, Sense::kLessEqual, 1.0);
      }
    }

    // Consecutive working days; the reserve shift counts as a working day.
    const int b1 = e.max_consecutive_work;
    for (int delta = 0; delta <= std::min(b1 - 1, D - 1); ++delta) {
      const int hist = history_count(inst, n, delta - b1, -1, any_shift);
      if (hist == 0) continue;
      LinExpr lhs;
      for (int d = 0; d <= delta; ++d) lhs += x.any_on(n, d);
      m.add_constraint(label("consec_hist", {n, delta}), lhs, Sense::kLessEqual, b1 - hist);
    }
    for (int d = 0; d + b1 < D; ++d) {
      LinExpr lhs;
      for (int t = d; t <= d + b1; ++t) lhs += x.any_on(n, t);
      m.add_constraint(label("consec", {n, d}), lhs, Sense::kLessEqual, b1);
    }

    // Consecutive nights. The robust form adds the reserve shift of each day
    // in the window, since it may turn into a night.
    const int b2 = e.max_consecutive_nights;
    for (int delta = 0; delta <= std::min(b2 - 1, D - 1); ++delta) {
      const int hist = history_count(inst, n, delta - b2, -1, is_night);
      if (hist == 0) continue;
      LinExpr nights;
      for (int d = 0; d <= delta; ++d) nights += x.shift_on(n, d, night);
      if (!conversion_safe) {
        m.add_constraint(label("nights_hist", {n, delta}), nights, Sense::kLessEqual, b2 - hist);
        continue;
      }
      for (int dr = 0; dr <= delta; ++dr) {
        LinExpr lhs = nights;
        lhs += x.shift_on(n, dr, res);
        m.add_constraint(label("nights_hist", {n, delta, dr}), lhs, Sense::kLessEqual, b2 - hist);
      }
    }
    for (int d = 0; d + b2 < D; ++d) {
      LinExpr nights;
      for (int t = d; t <= d + b2; ++t) nights += x.shift_on(n, t, night);
      if (!conversion_safe) {
        m.add_constraint(label("nights", {n, d}), nights, Sense::kLessEqual, b2);
        continue;
      }
      for (int dr = d; dr <= d + b2; ++dr) {
        LinExpr lhs = nights;
        lhs += x.shift_on(n, dr, res);
        m.add_constraint(label("nights", {n, d, dr}), lhs, Sense::kLessEqual, b2);
      }
    }

    // Minimum and maximum working days, reserve cap.
    LinExpr worked;
    LinExpr reserves;
    for (int d = 0; d < D; ++d) {
      worked += x.working_on(n, d);
      reserves += x.shift_on(n, d, res);
    }
    if (e.min_work_days > 0) {
      m.add_constraint(label("min_work", {n}), worked, Sense::kGreaterEqual, e.min_work_days);
    }
    const VarId v5 = m.add_continuous(label("v5", {n}));
    overtime.push_back(v5);
    LinExpr over = worked;
    over.add(v5, -1.0);
    m.add_constraint(label("max_work", {n}), over, Sense::kLessEqual, e.max_work_days);
    m.add_constraint(label("reserve_cap", {n}), reserves, Sense::kLessEqual,
                     e.max_reserve_shifts);

    if (!conversion_safe) continue;
    // A reserve may become any working shift, so it must be compatible with
    // every successor and predecessor that some working shift forbids.
    for (int d = 0; d < D; ++d) {
      const LinExpr r = x.shift_on(n, d, res);
      for (int s = 0; s < inst.shifts.num_working(); ++s) {
        if (has_successor[s] && d >= 1) {
          LinExpr lhs = x.shift_on(n, d - 1, s);
          lhs += r;
          m.add_constraint(label("conv_succ_in", {n, d, s}), lhs, Sense::kLessEqual, 1.0);
        }
        if (has_predecessor[s] && d + 1 < D) {
          LinExpr lhs = r;
          lhs += x.shift_on(n, d + 1, s);
          m.add_constraint(label("conv_succ_out", {n, d, s}), lhs, Sense::kLessEqual, 1.0);
        }
      }
    }
    const int last = inst.history_shift(n, -1);
    if (last != kOff && inst.shifts.is_working(last) && has_successor[last]) {
      m.add_constraint(label("conv_succ_hist", {n}), x.shift_on(n, 0, res), Sense::kEqual, 0.0);
    }
  }

  // Undesired assignments, and no reserve on a day where some working shift
  // is undesired.
  std::vector<char> reserve_blocked(static_cast<std::size_t>(inst.num_employees()) * D, 0);
  for (const auto& u : inst.undesired) {
    m.add_constraint(label("undesired", {u.employee, u.day, u.shift}),
                     x.shift_on(u.employee, u.day, u.shift), Sense::kEqual, 0.0);
    if (inst.shifts.is_working(u.shift)) {
      reserve_blocked[static_cast<std::size_t>(u.employee) * D + u.day] = 1;
    }
  }
  if (conversion_safe) {
    for (int n = 0; n < inst.num_employees(); ++n) {
      for (int d = 0; d < D; ++d) {
        if (reserve_blocked[static_cast<std::size_t>(n) * D + d] && !inst.is_undesired(n, d, res)) {
          m.add_constraint(label("conv_undesired", {n, d}), x.shift_on(n, d, res), Sense::kEqual,
                           0.0);
        }
      }
    }
  }
  return overtime;
}

RosteringModel build_rostering_model(const ProblemInstance& inst,
                                     const ReserveRequirement& reserve,
                                     const RosteringOptions& options) {
  validate(reserve, inst);
  RosteringModel rm;
  auto& m = rm.model;
  rm.x = AssignmentVars(m, inst);
  const auto& x = rm.x;
  const int D = inst.days;
  const int W = inst.shifts.num_working();
  const int K = inst.num_skills();
  const int res = inst.shifts.reserve_index();

  for (int n = 0; n < inst.num_employees(); ++n) {
    const auto& e = inst.employees[n];
    for (int d = 0; d < D; ++d) {
      m.add_constraint(label("one_shift", {n, d}), x.any_on(n, d), Sense::kLessEqual, 1.0);
      for (int s = 0; s < inst.shifts.num_shifts(); ++s) {
        for (int k : e.skills) {
          m.add_objective_term(x.at(n, d, s, k), s == res ? e.reserve_wage : e.wage);
        }
      }
    }
  }

  rm.understaffing.assign(static_cast<std::size_t>(D) * W * K, VarId{});
  for (int d = 0; d < D; ++d) {
    for (int s = 0; s < W; ++s) {
      for (int k = 0; k < K; ++k) {
        const int need = inst.demand_at(d, s, k);
        if (need <= 0) continue;
        const VarId v6 = m.add_continuous(label("v6", {d, s, k}));
        rm.understaffing[(static_cast<std::size_t>(d) * W + s) * K + k] = v6;
        m.add_objective_term(v6, inst.understaff_cost);
        LinExpr cover(v6);
        for (int n = 0; n < inst.num_employees(); ++n) {
          if (x.has(n, d, s, k)) cover.add(x.at(n, d, s, k), 1.0);
        }
        m.add_constraint(label("demand", {d, s, k}), cover, Sense::kGreaterEqual, need);
      }
    }
  }

  rm.overtime = add_contract_constraints(m, inst, x, options.conversion_safe);
  for (int n = 0; n < inst.num_employees(); ++n) {
    m.add_objective_term(rm.overtime[n], inst.employees[n].overtime_wage);
  }

  for (int d = 0; d < D; ++d) {
    const VarId vr = m.add_continuous(label("vr", {d}));
    rm.shortfall.push_back(vr);
    m.add_objective_term(vr, inst.reserve_shortfall_penalty);
    LinExpr lhs(vr);
    for (int n = 0; n < inst.num_employees(); ++n) lhs += x.shift_on(n, d, res);
    m.add_constraint(label("reserve_req", {d}), lhs, Sense::kGreaterEqual, reserve.per_day[d]);
  }
  return rm;
}

Roster solve_rostering(const ProblemInstance& inst, const ReserveRequirement& reserve,
                       const mip::SolveControls& controls, const RosteringOptions& options) {
  const auto rm = build_rostering_model(inst, reserve, options);
  const auto outcome = mip::solve(rm.model, controls);
  if (!outcome.has_solution()) {
    throw SolveError(outcome.status, "rostering: " + mip::to_string(outcome.status) +
                                         (outcome.message.empty() ? "" : " (" + outcome.message + ")"));
  }
  Roster roster = evaluate_roster(inst, rm.x.extract(outcome), reserve);
  roster.solve = {outcome.status, outcome.objective_value, outcome.gap, outcome.wall_time};
  // Slacks at an incumbent can exceed their closed form, never undercut it.
  const double tol = mip::objective_tolerance(outcome.objective_value);
  if (roster.costs.total > outcome.objective_value + tol) {
    throw std::logic_error("rostering: recomputed cost " + std::to_string(roster.costs.total) +
                           " disagrees with solver objective " +
                           std::to_string(outcome.objective_value));
  }
  return roster;
}

}  // namespace rosterlab
