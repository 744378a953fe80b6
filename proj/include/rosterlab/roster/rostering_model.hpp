#pragma once

#include <stdexcept>

#include "rosterlab/core/types.hpp"
#include "rosterlab/mip/solver.hpp"
#include "rosterlab/roster/roster.hpp"

namespace rosterlab {

/// Raised when a solve ends without a usable incumbent.
class SolveError : public std::runtime_error {
 public:
  SolveError(mip::SolveStatus status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  mip::SolveStatus status() const { return status_; }

 private:
  mip::SolveStatus status_;
};

/// x[n,d,s,k] for every shift s (working and reserve) and qualified skill k.
/// Unqualified combinations have no variable.
class AssignmentVars {
 public:
  AssignmentVars() = default;
  AssignmentVars(mip::MipModel& model, const ProblemInstance& instance);

  bool has(int n, int d, int s, int k) const { return at(n, d, s, k).valid(); }
  mip::VarId at(int n, int d, int s, int k) const {
    return x_[((static_cast<std::size_t>(n) * days_ + d) * shifts_ + s) * skills_ + k];
  }
  /// Sum over skills of x[n,d,s,.].
  mip::LinExpr shift_on(int n, int d, int s) const;
  /// Sum over all shifts and skills on day d.
  mip::LinExpr any_on(int n, int d) const;
  /// Sum over working shifts and skills on day d.
  mip::LinExpr working_on(int n, int d) const;

  /// Reads the assignment from a solution (values above one half).
  AssignmentGrid extract(const mip::SolveOutcome& outcome) const;

 private:
  int employees_ = 0;
  int days_ = 0;
  int shifts_ = 0;
  int working_ = 0;
  int skills_ = 0;
  std::vector<mip::VarId> x_;
};

/// Sequence and workload constraints shared by rostering and rerostering:
/// forbidden successions, consecutive working days and nights, undesired
/// assignments, minimum and maximum working days (with overtime slack
/// v5[n]) and the per-employee reserve cap. With `conversion_safe` the night,
/// succession and undesired rules are tightened so that converting any
/// single reserve shift into any working shift keeps them satisfied.
/// Returns the overtime variables, one per employee.
std::vector<mip::VarId> add_contract_constraints(mip::MipModel& model,
                                                 const ProblemInstance& instance,
                                                 const AssignmentVars& x, bool conversion_safe);

struct RosteringOptions {
  bool conversion_safe = true;
};

/// Variables are named x[n,d,s,k], v5[n], v6[d,s,k] (only where demand is
/// positive) and vr[d]; constraints carry matching bracketed names.
struct RosteringModel {
  mip::MipModel model;
  AssignmentVars x;
  std::vector<mip::VarId> overtime;
  std::vector<mip::VarId> understaffing;  // dense [d][s][k], invalid without demand
  std::vector<mip::VarId> shortfall;      // per day
};

RosteringModel build_rostering_model(const ProblemInstance& instance,
                                     const ReserveRequirement& reserve,
                                     const RosteringOptions& options = {});

/// Solves the robust rostering problem. The returned roster's costs are
/// recomputed from the assignment and checked against the solver objective.
/// Throws SolveError without an incumbent.
Roster solve_rostering(const ProblemInstance& instance, const ReserveRequirement& reserve,
                       const mip::SolveControls& controls = {},
                       const RosteringOptions& options = {});

}  // namespace rosterlab
