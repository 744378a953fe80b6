#include "rosterlab/mip/solver.hpp"

#include <cmath>

namespace rosterlab::mip {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasibleGap: return "feasible_gap";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kTimeLimit: return "time_limit";
    case SolveStatus::kError: return "error";
  }
  return "error";
}

std::string to_string(Backend backend) {
  return backend == Backend::kHighs ? "highs" : "enumeration";
}

Backend parse_backend(const std::string& text) {
  if (text == "highs") return Backend::kHighs;
  if (text == "enumeration") return Backend::kEnumeration;
  throw ModelError("unknown backend '" + text + "'");
}

SolveOutcome solve(const MipModel& model, const SolveControls& controls) {
  model.validate();
  if (controls.gap_tolerance < 0 || controls.time_limit_seconds <= 0 || controls.threads < 1) {
    throw ModelError("invalid solve controls");
  }
  SolveOutcome out = controls.backend == Backend::kHighs
                         ? detail::solve_highs(model, controls)
                         : detail::solve_enumeration(model, controls);
  if (out.has_solution()) {
    const auto& vars = model.variables();
    for (std::size_t j = 0; j < vars.size(); ++j) {
      if (vars[j].kind == VarKind::kContinuous) continue;
      const double r = std::round(out.values[j]);
      if (std::abs(out.values[j] - r) <= kIntegralityTolerance) out.values[j] = r;
    }
  }
  return out;
}

}  // namespace rosterlab::mip
