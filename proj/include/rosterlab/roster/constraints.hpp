#pragma once

#include <string>
#include <vector>

#include "rosterlab/core/types.hpp"

namespace rosterlab {

/// Assignments per (employee, day) without the one-per-day restriction, so
/// that hand-made or converted rosters with double bookings can be checked.
class AssignmentTensor {
 public:
  AssignmentTensor() = default;
  AssignmentTensor(int employees, int days)
      : employees_(employees), days_(days),
        cells_(static_cast<std::size_t>(employees) * days) {}
  explicit AssignmentTensor(const AssignmentGrid& grid);

  int num_employees() const { return employees_; }
  int num_days() const { return days_; }
  const std::vector<Assignment>& at(int employee, int day) const {
    return cells_[static_cast<std::size_t>(employee) * days_ + day];
  }
  std::vector<Assignment>& at(int employee, int day) {
    return cells_[static_cast<std::size_t>(employee) * days_ + day];
  }

 private:
  int employees_ = 0;
  int days_ = 0;
  std::vector<std::vector<Assignment>> cells_;
};

enum class Rule {
  kQualification,
  kOneShiftPerDay,
  kForbiddenSuccession,
  kConsecutiveWork,
  kConsecutiveNights,
  kUndesired,
  kMinWorkDays,
  kReserveCap,
};

std::string to_string(Rule rule);

struct Violation {
  Rule rule;
  int employee = 0;
  int day = 0;  // first offending day; -1 for whole-period rules
  std::string detail;
};

struct CheckOptions {
  bool min_work_days = true;
  bool reserve_cap = true;
};

/// Hard constraints of the rostering problem on an explicit assignment:
/// qualifications, one shift per day, forbidden successions (including the
/// last history day), consecutive working days and nights over history and
/// period, undesired assignments, minimum working days and the reserve cap.
/// Reserve shifts count as working days but not as nights.
std::vector<Violation> check_hard_constraints(const ProblemInstance& instance,
                                              const AssignmentTensor& roster,
                                              const CheckOptions& options = {});
std::vector<Violation> check_hard_constraints(const ProblemInstance& instance,
                                              const AssignmentGrid& roster,
                                              const CheckOptions& options = {});

struct ConversionViolation {
  int employee = 0;
  int day = 0;
  int shift = 0;  // working shift the reserve was converted to
  int skill = 0;
  Violation violation;
};

/// Converts each reserve assignment, one at a time, into every working shift
/// and qualified skill and re-checks the per-day and sequence rules. Empty
/// iff every single conversion keeps the roster feasible.
std::vector<ConversionViolation> check_conversion_safety(const ProblemInstance& instance,
                                                         const AssignmentTensor& roster);
std::vector<ConversionViolation> check_conversion_safety(const ProblemInstance& instance,
                                                         const AssignmentGrid& roster);

}  // namespace rosterlab
