#pragma once

#include <string>
#include <vector>

#include "rosterlab/mip/model.hpp"

namespace rosterlab::mip {

enum class Backend {
  kHighs,        // linked HiGHS branch-and-cut
  kEnumeration,  // built-in LP-based branch and bound, tiny models only
};

enum class SolveStatus { kOptimal, kFeasibleGap, kInfeasible, kTimeLimit, kError };

std::string to_string(SolveStatus status);
std::string to_string(Backend backend);
Backend parse_backend(const std::string& text);
/// Version string of the linked HiGHS library.
std::string highs_version();

struct SolveControls {
  double gap_tolerance = 1e-4;
  double time_limit_seconds = 100.0;
  int threads = 1;
  Backend backend = Backend::kHighs;
};

inline constexpr double kIntegralityTolerance = 1e-6;
/// Largest number of integer variables the enumeration backend accepts.
inline constexpr int kEnumerationMaxIntegers = 30;

struct SolveOutcome {
  SolveStatus status = SolveStatus::kError;
  double objective_value = 0.0;
  double gap = 0.0;
  std::vector<double> values;  // indexed by VarId; empty without an incumbent
  double wall_time = 0.0;
  std::string message;

  bool has_solution() const { return !values.empty(); }
  double value(VarId v) const { return values.at(v.index); }
};

/// Validates the model, then dispatches to the selected backend. Integer and
/// binary values within kIntegralityTolerance of an integer are snapped.
/// Throws ModelError for malformed models or when the backend cannot take
/// the model (e.g. too many integer variables for enumeration).
SolveOutcome solve(const MipModel& model, const SolveControls& controls = {});

/// Tolerance used when comparing objective values: 1e-4 * (1 + |objective|).
inline double objective_tolerance(double objective) {
  return 1e-4 * (1.0 + (objective < 0 ? -objective : objective));
}

namespace detail {
SolveOutcome solve_highs(const MipModel& model, const SolveControls& controls);
SolveOutcome solve_enumeration(const MipModel& model, const SolveControls& controls);
}  // namespace detail

}  // namespace rosterlab::mip
