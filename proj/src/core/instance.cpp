#include "rosterlab/core/types.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

namespace rosterlab {

bool ShiftCatalog::forbidden(int first, int second) const {
  return std::find(forbidden_successions.begin(), forbidden_successions.end(),
                   std::pair{first, second}) != forbidden_successions.end();
}

bool Employee::qualified(int skill) const {
  return std::binary_search(skills.begin(), skills.end(), skill);
}

void ProblemInstance::index() {
  for (auto& e : employees) {
    std::sort(e.skills.begin(), e.skills.end());
  }
  std::sort(shifts.forbidden_successions.begin(), shifts.forbidden_successions.end());
  std::sort(undesired.begin(), undesired.end(), [](const auto& a, const auto& b) {
    return std::tie(a.employee, a.day, a.shift) < std::tie(b.employee, b.day, b.shift);
  });
  undesired.erase(std::unique(undesired.begin(), undesired.end()), undesired.end());
  std::sort(history.begin(), history.end(), [](const auto& a, const auto& b) {
    // employee ascending, then the most recent day first
    return std::tie(a.employee, b.day) < std::tie(b.employee, a.day);
  });

  const int n_emp = num_employees();
  const int n_shift = shifts.num_shifts();
  undesired_lookup_.assign(static_cast<std::size_t>(n_emp) * days * n_shift, 0);
  for (const auto& u : undesired) {
    if (u.employee >= 0 && u.employee < n_emp && u.day >= 0 && u.day < days && u.shift >= 0 &&
        u.shift < n_shift) {
      undesired_lookup_[(static_cast<std::size_t>(u.employee) * days + u.day) * n_shift +
                        u.shift] = 1;
    }
  }
  history_depth_ = 0;
  for (const auto& h : history) {
    history_depth_ = std::max(history_depth_, -h.day);
  }
  history_lookup_.assign(static_cast<std::size_t>(n_emp) * history_depth_, kOff);
  for (const auto& h : history) {
    if (h.employee >= 0 && h.employee < n_emp && h.day < 0) {
      history_lookup_[static_cast<std::size_t>(h.employee) * history_depth_ + (-h.day - 1)] =
          h.shift;
    }
  }
}

bool ProblemInstance::is_undesired(int employee, int day, int shift) const {
  return undesired_lookup_[(static_cast<std::size_t>(employee) * days + day) *
                               shifts.num_shifts() +
                           shift] != 0;
}

int ProblemInstance::history_shift(int employee, int day) const {
  const int back = -day - 1;
  if (back < 0 || back >= history_depth_) {
    return kOff;
  }
  return history_lookup_[static_cast<std::size_t>(employee) * history_depth_ + back];
}

bool ProblemInstance::operator==(const ProblemInstance& other) const {
  return employees == other.employees && days == other.days && skills == other.skills &&
         shifts == other.shifts && demand == other.demand && undesired == other.undesired &&
         history == other.history && understaff_cost == other.understaff_cost &&
         reserve_shortfall_penalty == other.reserve_shortfall_penalty;
}

namespace {

std::string at_index(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

template <typename T>
bool has_duplicates(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  return std::adjacent_find(values.begin(), values.end()) != values.end();
}

void validate_shifts(const ShiftCatalog& shifts) {
  if (shifts.working.empty()) {
    throw InstanceError("shifts.working", "at least one working shift is required");
  }
  auto names = shifts.working;
  names.push_back(shifts.reserve);
  if (has_duplicates(names)) {
    throw InstanceError("shifts", "shift identifiers must be distinct");
  }
  if (!shifts.is_working(shifts.night)) {
    throw InstanceError("shifts.night", "night shift must be a working shift");
  }
  for (std::size_t i = 0; i < shifts.forbidden_successions.size(); ++i) {
    const auto [a, b] = shifts.forbidden_successions[i];
    if (!shifts.is_working(a) || !shifts.is_working(b)) {
      throw InstanceError(at_index("shifts.forbidden_successions", i),
                          "successions may only reference working shifts");
    }
  }
}

void validate_employee(const Employee& e, int n_skills, const std::string& path) {
  if (e.skills.empty()) {
    throw InstanceError(path + ".skills", "must not be empty");
  }
  for (int k : e.skills) {
    if (k < 0 || k >= n_skills) {
      throw InstanceError(path + ".skills", "unknown skill index " + std::to_string(k));
    }
  }
  if (has_duplicates(e.skills)) {
    throw InstanceError(path + ".skills", "duplicate skill");
  }
  const std::pair<const char*, int> limits[] = {
      {"max_consecutive_work", e.max_consecutive_work},
      {"max_consecutive_nights", e.max_consecutive_nights},
      {"min_work_days", e.min_work_days},
      {"max_work_days", e.max_work_days},
      {"max_reserve_shifts", e.max_reserve_shifts},
  };
  for (const auto& [name, value] : limits) {
    if (value < 0) {
      throw InstanceError(path + "." + name, "must be non-negative");
    }
  }
  if (e.min_work_days > e.max_work_days) {
    throw InstanceError(path + ".min_work_days", "exceeds max_work_days");
  }
  const std::pair<const char*, double> costs[] = {
      {"wage", e.wage},
      {"overtime_wage", e.overtime_wage},
      {"reserve_wage", e.reserve_wage},
      {"change_cost_shift", e.change_cost_shift},
      {"change_cost_reserve", e.change_cost_reserve},
      {"change_cost_dayoff", e.change_cost_dayoff},
  };
  for (const auto& [name, value] : costs) {
    if (!(value >= 0.0)) {
      throw InstanceError(path + "." + name, "cost must be non-negative");
    }
  }
}

}  // namespace

void validate(const ProblemInstance& instance) {
  if (instance.days < 1) {
    throw InstanceError("days", "must be at least 1");
  }
  if (instance.skills.empty()) {
    throw InstanceError("skills", "at least one skill is required");
  }
  if (has_duplicates(instance.skills)) {
    throw InstanceError("skills", "skill identifiers must be distinct");
  }
  validate_shifts(instance.shifts);
  if (instance.employees.empty()) {
    throw InstanceError("employees", "at least one employee is required");
  }
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < instance.employees.size(); ++i) {
    validate_employee(instance.employees[i], instance.num_skills(), at_index("employees", i));
    ids.push_back(instance.employees[i].id);
  }
  if (has_duplicates(ids)) {
    throw InstanceError("employees", "employee ids must be distinct");
  }
  const std::size_t expected =
      static_cast<std::size_t>(instance.days) * instance.shifts.num_working() * instance.num_skills();
  if (instance.demand.size() != expected) {
    throw InstanceError("demand", "dense demand table has the wrong size");
  }
  for (int v : instance.demand) {
    if (v < 0) {
      throw InstanceError("demand", "minimum staffing must be non-negative");
    }
  }
  const int n_emp = instance.num_employees();
  for (std::size_t i = 0; i < instance.undesired.size(); ++i) {
    const auto& u = instance.undesired[i];
    const auto path = at_index("undesired", i);
    if (u.employee < 0 || u.employee >= n_emp) throw InstanceError(path + ".employee", "out of range");
    if (u.day < 0 || u.day >= instance.days) throw InstanceError(path + ".day", "out of range");
    if (u.shift < 0 || u.shift >= instance.shifts.num_shifts()) {
      throw InstanceError(path + ".shift", "out of range");
    }
  }
  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < instance.history.size(); ++i) {
    const auto& h = instance.history[i];
    const auto path = at_index("history", i);
    if (h.employee < 0 || h.employee >= n_emp) throw InstanceError(path + ".employee", "out of range");
    if (h.day >= 0) throw InstanceError(path + ".day", "history days must be negative");
    if (h.shift < 0 || h.shift >= instance.shifts.num_shifts()) {
      throw InstanceError(path + ".shift", "out of range");
    }
    if (!seen.emplace(h.employee, h.day).second) {
      throw InstanceError(path, "more than one shift on a history day");
    }
  }
  if (!(instance.understaff_cost >= 0.0)) {
    throw InstanceError("costs.understaff", "must be non-negative");
  }
  if (!(instance.reserve_shortfall_penalty >= 0.0)) {
    throw InstanceError("costs.reserve_shortfall", "must be non-negative");
  }
}

int max_feasible_work_days(const ProblemInstance& instance, int employee) {
  const auto& e = instance.employees.at(employee);
  const int cap = e.max_consecutive_work;
  int run = 0;
  for (int h = -1; instance.history_shift(employee, h) != kOff; --h) {
    ++run;
  }
  // best[r] = most working days so far with a trailing run of r days.
  constexpr int kNone = -1;
  std::vector<int> best(cap + 1, kNone);
  best[std::min(run, cap)] = 0;
  if (run > cap) {
    return 0;
  }
  for (int d = 0; d < instance.days; ++d) {
    bool available = false;
    for (int s = 0; s < instance.shifts.num_working(); ++s) {
      available = available || !instance.is_undesired(employee, d, s);
    }
    std::vector<int> next(cap + 1, kNone);
    for (int r = 0; r <= cap; ++r) {
      if (best[r] == kNone) continue;
      next[0] = std::max(next[0], best[r]);
      if (available && r + 1 <= cap) {
        next[r + 1] = std::max(next[r + 1], best[r] + 1);
      }
    }
    best = std::move(next);
  }
  return *std::max_element(best.begin(), best.end());
}

int ReserveRequirement::total() const {
  return std::accumulate(per_day.begin(), per_day.end(), 0);
}

void validate(const ReserveRequirement& reserve, const ProblemInstance& instance) {
  if (static_cast<int>(reserve.per_day.size()) != instance.days) {
    throw InstanceError("reserve", "length " + std::to_string(reserve.per_day.size()) +
                                       " does not match " + std::to_string(instance.days) +
                                       " days");
  }
  for (std::size_t d = 0; d < reserve.per_day.size(); ++d) {
    if (reserve.per_day[d] < 0 || reserve.per_day[d] > instance.num_employees()) {
      throw InstanceError(at_index("reserve", d), "must lie in [0, |N|]");
    }
  }
}

bool AbsenceScenario::in_absent_set(int employee) const {
  for (int d = 0; d < days_; ++d) {
    if (absent(employee, d)) return true;
  }
  return false;
}

std::vector<int> AbsenceScenario::absent_set() const {
  std::vector<int> out;
  for (int n = 0; n < employees_; ++n) {
    if (in_absent_set(n)) out.push_back(n);
  }
  return out;
}

int AbsenceScenario::total_absences() const {
  return static_cast<int>(std::count(absent_.begin(), absent_.end(), 1));
}

int AbsenceScenario::absences_on(int day) const {
  int count = 0;
  for (int n = 0; n < employees_; ++n) {
    count += absent(n, day) ? 1 : 0;
  }
  return count;
}

}  // namespace rosterlab
