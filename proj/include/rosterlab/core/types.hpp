#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rosterlab {

// Shift indices: working shifts occupy [0, |S_w|), the reserve shift is |S_w|.
// kOff marks a day without any assignment.
inline constexpr int kOff = -1;

/// Raised by validation and by the instance reader. `path()` points at the
/// offending field, e.g. "employees[3].min_work_days".
class InstanceError : public std::runtime_error {
 public:
  InstanceError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct ShiftCatalog {
  std::vector<std::string> working;  // S_w, in index order
  std::string reserve = "reserve";
  int night = 0;                      // index into working
  std::vector<std::pair<int, int>> forbidden_successions;

  int num_working() const { return static_cast<int>(working.size()); }
  int reserve_index() const { return num_working(); }
  int num_shifts() const { return num_working() + 1; }
  bool is_working(int s) const { return s >= 0 && s < num_working(); }
  bool is_reserve(int s) const { return s == reserve_index(); }
  bool forbidden(int first, int second) const;
  const std::string& name(int s) const { return is_reserve(s) ? reserve : working.at(s); }

  bool operator==(const ShiftCatalog&) const = default;
};

struct Employee {
  std::string id;
  std::vector<int> skills;       // K_n, sorted
  int max_consecutive_work = 6;  // beta1
  int max_consecutive_nights = 4;
  int min_work_days = 16;
  int max_work_days = 20;
  int max_reserve_shifts = 4;
  double wage = 100.0;           // omega1, per working day
  double overtime_wage = 150.0;  // omega5, per day above max_work_days
  double reserve_wage = 10.0;    // omega7, per reserve shift
  double change_cost_shift = 100.0;   // omega2
  double change_cost_reserve = 10.0;  // omega3
  double change_cost_dayoff = 150.0;  // omega4

  bool qualified(int skill) const;

  bool operator==(const Employee&) const = default;
};

struct HistoryEntry {
  int employee = 0;
  int day = -1;  // negative, -1 is the last day of the preceding period
  int shift = 0;

  bool operator==(const HistoryEntry&) const = default;
};

struct UndesiredEntry {
  int employee = 0;
  int day = 0;
  int shift = 0;

  bool operator==(const UndesiredEntry&) const = default;
};

/// Rostering problem data. Demand is dense over (day, working shift, skill);
/// undesired and history are kept as sparse lists in canonical order with
/// dense lookup tables rebuilt by `index()`.
class ProblemInstance {
 public:
  std::vector<Employee> employees;
  int days = 0;
  std::vector<std::string> skills;
  ShiftCatalog shifts;
  std::vector<int> demand;  // [day][working shift][skill]
  std::vector<UndesiredEntry> undesired;
  std::vector<HistoryEntry> history;
  double understaff_cost = 500.0;      // omega6
  double reserve_shortfall_penalty = 1000.0;  // omega_r

  int num_employees() const { return static_cast<int>(employees.size()); }
  int num_skills() const { return static_cast<int>(skills.size()); }

  int demand_at(int day, int shift, int skill) const {
    return demand[(static_cast<std::size_t>(day) * shifts.num_working() + shift) *
                      num_skills() +
                  skill];
  }
  int& demand_at(int day, int shift, int skill) {
    return demand[(static_cast<std::size_t>(day) * shifts.num_working() + shift) *
                      num_skills() +
                  skill];
  }
  void resize_demand() {
    demand.assign(static_cast<std::size_t>(days) * shifts.num_working() * num_skills(), 0);
  }

  bool is_undesired(int employee, int day, int shift) const;
  /// Shift worked on history day `day` (< 0), or kOff.
  int history_shift(int employee, int day) const;
  /// Length of the longest history lookback present in the data.
  int history_depth() const { return history_depth_; }

  /// Sorts the sparse lists and rebuilds lookup tables. Called by the
  /// generator and the reader; call again after editing fields by hand.
  void index();

  bool operator==(const ProblemInstance& other) const;

 private:
  std::vector<char> undesired_lookup_;      // [employee][day][shift]
  std::vector<int> history_lookup_;         // [employee][lookback]
  int history_depth_ = 0;
};

/// Throws InstanceError on the first violated invariant.
void validate(const ProblemInstance& instance);

/// Upper bound on the working days employee `n` can be given in the period,
/// honouring undesired days, history and the consecutive-days limit.
int max_feasible_work_days(const ProblemInstance& instance, int employee);

/// Required reserve shifts per day (c*_d).
struct ReserveRequirement {
  std::vector<int> per_day;

  static ReserveRequirement zeros(int days) { return {std::vector<int>(days, 0)}; }
  int total() const;
  bool operator==(const ReserveRequirement&) const = default;
};

void validate(const ReserveRequirement& reserve, const ProblemInstance& instance);

/// Realized absences, dense [employee][day].
class AbsenceScenario {
 public:
  AbsenceScenario() = default;
  AbsenceScenario(int employees, int days, std::uint64_t seed = 0)
      : employees_(employees), days_(days), seed_(seed),
        absent_(static_cast<std::size_t>(employees) * days, 0) {}

  int num_employees() const { return employees_; }
  int num_days() const { return days_; }
  std::uint64_t seed() const { return seed_; }

  bool absent(int employee, int day) const {
    return absent_[static_cast<std::size_t>(employee) * days_ + day] != 0;
  }
  void set_absent(int employee, int day, bool value = true) {
    absent_[static_cast<std::size_t>(employee) * days_ + day] = value ? 1 : 0;
  }
  /// N-hat: employees with at least one absence.
  bool in_absent_set(int employee) const;
  std::vector<int> absent_set() const;
  int total_absences() const;
  int absences_on(int day) const;

  bool operator==(const AbsenceScenario&) const = default;

 private:
  int employees_ = 0;
  int days_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<char> absent_;
};

struct Assignment {
  int shift = kOff;
  int skill = -1;

  bool is_off() const { return shift == kOff; }
  bool operator==(const Assignment&) const = default;
};

/// One assignment per (employee, day).
class AssignmentGrid {
 public:
  AssignmentGrid() = default;
  AssignmentGrid(int employees, int days)
      : employees_(employees), days_(days),
        cells_(static_cast<std::size_t>(employees) * days) {}

  int num_employees() const { return employees_; }
  int num_days() const { return days_; }
  const Assignment& at(int employee, int day) const {
    return cells_[static_cast<std::size_t>(employee) * days_ + day];
  }
  Assignment& at(int employee, int day) {
    return cells_[static_cast<std::size_t>(employee) * days_ + day];
  }

  bool operator==(const AssignmentGrid&) const = default;

 private:
  int employees_ = 0;
  int days_ = 0;
  std::vector<Assignment> cells_;
};

}  // namespace rosterlab
