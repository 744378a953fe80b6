#pragma once

#include <filesystem>
#include <string>

#include "rosterlab/core/types.hpp"
#include "rosterlab/util/rng.hpp"

namespace rosterlab::testing {

// Small hand-built instance: one skill, `working` working shifts (the last
// one is the night shift), no history, no successions, zero demand.
// Costs follow the usual table for a wage of 100.
inline ProblemInstance tiny_instance(int employees, int days, int working = 1, int skills = 1) {
  ProblemInstance inst;
  inst.days = days;
  for (int k = 0; k < skills; ++k) inst.skills.push_back("skill" + std::to_string(k));
  for (int s = 0; s < working; ++s) inst.shifts.working.push_back("w" + std::to_string(s));
  inst.shifts.reserve = "reserve";
  inst.shifts.night = working - 1;
  for (int n = 0; n < employees; ++n) {
    Employee e;
    e.id = "e" + std::to_string(n);
    for (int k = 0; k < skills; ++k) e.skills.push_back(k);
    e.max_consecutive_work = 5;
    e.max_consecutive_nights = 5;
    e.min_work_days = 0;
    e.max_work_days = days;
    e.max_reserve_shifts = days;
    e.wage = 100;
    e.overtime_wage = 150;
    e.reserve_wage = 10;
    e.change_cost_shift = 100;
    e.change_cost_reserve = 10;
    e.change_cost_dayoff = 150;
    inst.employees.push_back(e);
  }
  inst.understaff_cost = 500;
  inst.reserve_shortfall_penalty = 1000;
  inst.resize_demand();
  inst.index();
  return inst;
}

// T1: one employee, one day, one working shift with demand 1, max one
// working day. Optimum 100 with the employee working.
inline ProblemInstance instance_t1() {
  auto inst = tiny_instance(1, 1);
  inst.employees[0].max_work_days = 1;
  inst.demand_at(0, 0, 0) = 1;
  return inst;
}

// T2: two identical employees, one day, demand 1, at most one reserve each.
// With one required reserve the optimum is 110.
inline ProblemInstance instance_t2() {
  auto inst = tiny_instance(2, 1);
  for (auto& e : inst.employees) {
    e.max_reserve_shifts = 1;
    e.max_work_days = 1;
  }
  inst.demand_at(0, 0, 0) = 1;
  return inst;
}

// Random instance within the enumeration guard: up to 3 employees, 3 days,
// 2 working shifts and 2 skills, with random successions, undesired shifts,
// history and tight contract limits.
inline ProblemInstance random_tiny_instance(RngStream& rng) {
  const int employees = rng.uniform_int(1, 3);
  const int days = rng.uniform_int(1, 3);
  const int working = rng.uniform_int(1, 2);
  const int skills = rng.uniform_int(1, 2);
  auto inst = tiny_instance(employees, days, working, skills);
  for (auto& e : inst.employees) {
    e.skills.clear();
    for (int k = 0; k < skills; ++k) {
      if (rng.bernoulli(0.7)) e.skills.push_back(k);
    }
    if (e.skills.empty()) e.skills.push_back(rng.uniform_int(0, skills - 1));
    e.max_consecutive_work = rng.uniform_int(1, 3);
    e.max_consecutive_nights = rng.uniform_int(0, 2);
    e.min_work_days = rng.uniform_int(0, 1);
    e.max_work_days = rng.uniform_int(1, days);
    e.max_reserve_shifts = rng.uniform_int(0, 2);
    e.wage = rng.uniform_int(3, 10) * 10.0;
    e.overtime_wage = 1.5 * e.wage;
    e.reserve_wage = 0.1 * e.wage;
    e.change_cost_shift = e.wage;
    e.change_cost_reserve = 0.1 * e.wage;
    e.change_cost_dayoff = 1.5 * e.wage;
  }
  for (int a = 0; a < working; ++a) {
    for (int b = 0; b < working; ++b) {
      if (a != b && rng.bernoulli(0.5)) inst.shifts.forbidden_successions.push_back({a, b});
    }
  }
  inst.shifts.night = rng.uniform_int(0, working - 1);
  for (auto& m : inst.demand) m = rng.uniform_int(0, 2);
  for (int n = 0; n < employees; ++n) {
    for (int d = 0; d < days; ++d) {
      if (rng.bernoulli(0.15)) inst.undesired.push_back({n, d, rng.uniform_int(0, working - 1)});
    }
    for (int h = -1; h >= -2; --h) {
      if (!rng.bernoulli(0.5)) break;
      inst.history.push_back({n, h, rng.uniform_int(0, working)});
    }
  }
  inst.understaff_cost = 500;
  inst.reserve_shortfall_penalty = 1000;
  inst.index();
  return inst;
}

inline ReserveRequirement random_reserve(RngStream& rng, int days) {
  ReserveRequirement r = ReserveRequirement::zeros(days);
  for (auto& c : r.per_day) c = rng.uniform_int(0, 1);
  return r;
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("rosterlab-test-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "-" +
             std::to_string(counter()++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const { return path_ / name; }

 private:
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::filesystem::path path_;
};

}  // namespace rosterlab::testing
