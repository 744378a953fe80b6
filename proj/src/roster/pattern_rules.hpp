#pragma once

// Direct rule evaluation on dense shift patterns for the exhaustive
// enumerators. A pattern holds one shift index per (employee, day) in
// employee-major order, kOff for a day off.

#include <algorithm>
#include <vector>

#include "rosterlab/core/types.hpp"

namespace rosterlab::detail {

using Pattern = std::vector<int>;

inline int cell(const Pattern& p, int days, int n, int d) {
  return p[static_cast<std::size_t>(n) * days + d];
}

inline int shift_at(const ProblemInstance& inst, const Pattern& p, int n, int d) {
  return d < 0 ? inst.history_shift(n, d) : cell(p, inst.days, n, d);
}

// Successions, consecutive days and nights, undesired shifts for employee n.
inline bool sequence_ok(const ProblemInstance& inst, const Pattern& p, int n) {
  const auto& e = inst.employees[n];
  int run = 0;
  int nights = 0;
  for (int d = -inst.history_depth(); d < inst.days; ++d) {
    const int s = shift_at(inst, p, n, d);
    run = s == kOff ? 0 : run + 1;
    nights = s == inst.shifts.night ? nights + 1 : 0;
    if (d < 0) continue;
    if (run > e.max_consecutive_work || nights > e.max_consecutive_nights) return false;
    if (s != kOff && inst.is_undesired(n, d, s)) return false;
    const int prev = shift_at(inst, p, n, d - 1);
    if (prev != kOff && s != kOff && inst.shifts.forbidden(prev, s)) return false;
  }
  return true;
}

// Minimum working days and reserve cap for employee n.
inline bool totals_ok(const ProblemInstance& inst, const Pattern& p, int n) {
  int worked = 0;
  int reserves = 0;
  for (int d = 0; d < inst.days; ++d) {
    const int s = cell(p, inst.days, n, d);
    if (s == inst.shifts.reserve_index()) {
      ++reserves;
    } else if (s != kOff) {
      ++worked;
    }
  }
  return worked >= inst.employees[n].min_work_days &&
         reserves <= inst.employees[n].max_reserve_shifts;
}

// Every reserve of employee n turned, alone, into any working shift keeps
// the sequence rules satisfied.
inline bool conversions_safe(const ProblemInstance& inst, Pattern& p, int n) {
  for (int d = 0; d < inst.days; ++d) {
    int& c = p[static_cast<std::size_t>(n) * inst.days + d];
    if (c != inst.shifts.reserve_index()) continue;
    bool ok = true;
    for (int s = 0; s < inst.shifts.num_working() && ok; ++s) {
      c = s;
      ok = sequence_ok(inst, p, n);
    }
    c = inst.shifts.reserve_index();
    if (!ok) return false;
  }
  return true;
}

// Least understaffing cost on (d, s) given who works it, choosing each
// worker's skill; writes the chosen skills into `skills` (per employee).
inline double cover_shift(const ProblemInstance& inst, const Pattern& p, int d, int s,
                          std::vector<int>& skills) {
  std::vector<int> workers;
  for (int n = 0; n < inst.num_employees(); ++n) {
    if (cell(p, inst.days, n, d) == s) workers.push_back(n);
  }
  const int K = inst.num_skills();
  std::vector<std::size_t> choice(workers.size(), 0);
  double best = -1.0;
  std::vector<int> count(K);
  while (true) {
    std::fill(count.begin(), count.end(), 0);
    for (std::size_t i = 0; i < workers.size(); ++i) {
      ++count[inst.employees[workers[i]].skills[choice[i]]];
    }
    double cost = 0.0;
    for (int k = 0; k < K; ++k) {
      cost += std::max(0, inst.demand_at(d, s, k) - count[k]) * inst.understaff_cost;
    }
    if (best < 0.0 || cost < best) {
      best = cost;
      for (std::size_t i = 0; i < workers.size(); ++i) {
        skills[workers[i]] = inst.employees[workers[i]].skills[choice[i]];
      }
    }
    std::size_t i = 0;
    while (i < workers.size() && ++choice[i] == inst.employees[workers[i]].skills.size()) {
      choice[i++] = 0;
    }
    if (i == workers.size()) break;
  }
  return best;
}

// Advances an odometer over values kOff..reserve in every cell; false once
// all patterns have been visited.
inline bool next_pattern(const ProblemInstance& inst, Pattern& p) {
  const int top = inst.shifts.reserve_index();
  for (auto& c : p) {
    if (c < top) {
      ++c;
      return true;
    }
    c = kOff;
  }
  return false;
}

// Rostering cost of a pattern (wages, overtime, least understaffing, reserve
// wages, shortfall against c*). Writes the chosen skill per (n, d) into
// `skills`, the first qualified skill for reserves.
inline double base_cost(const ProblemInstance& inst, const Pattern& p,
                        const std::vector<int>& reserve, std::vector<int>& skills) {
  const int D = inst.days;
  const int res = inst.shifts.reserve_index();
  double cost = 0.0;
  for (int n = 0; n < inst.num_employees(); ++n) {
    const auto& e = inst.employees[n];
    int worked = 0;
    for (int d = 0; d < D; ++d) {
      const int s = cell(p, D, n, d);
      if (s == res) {
        cost += e.reserve_wage;
        skills[static_cast<std::size_t>(n) * D + d] = e.skills.front();
      } else if (s != kOff) {
        cost += e.wage;
        ++worked;
      }
    }
    cost += std::max(0, worked - e.max_work_days) * e.overtime_wage;
  }
  std::vector<int> day_skills(inst.num_employees(), -1);
  for (int d = 0; d < D; ++d) {
    int reserves = 0;
    for (int n = 0; n < inst.num_employees(); ++n) reserves += cell(p, D, n, d) == res ? 1 : 0;
    cost += std::max(0, reserve[d] - reserves) * inst.reserve_shortfall_penalty;
    for (int s = 0; s < inst.shifts.num_working(); ++s) {
      cost += cover_shift(inst, p, d, s, day_skills);
      for (int n = 0; n < inst.num_employees(); ++n) {
        if (cell(p, D, n, d) == s) skills[static_cast<std::size_t>(n) * D + d] = day_skills[n];
      }
    }
  }
  return cost;
}

inline AssignmentGrid to_grid(const ProblemInstance& inst, const Pattern& p,
                              const std::vector<int>& skills) {
  AssignmentGrid grid(inst.num_employees(), inst.days);
  for (int n = 0; n < inst.num_employees(); ++n) {
    for (int d = 0; d < inst.days; ++d) {
      const std::size_t i = static_cast<std::size_t>(n) * inst.days + d;
      if (p[i] != kOff) grid.at(n, d) = {p[i], skills[i]};
    }
  }
  return grid;
}

}  // namespace rosterlab::detail
