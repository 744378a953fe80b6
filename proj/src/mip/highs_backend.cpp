#include <Highs.h>

#include <chrono>
#include <cmath>

#include "rosterlab/mip/solver.hpp"

namespace rosterlab::mip {

std::string highs_version() {
  return std::to_string(HIGHS_VERSION_MAJOR) + "." + std::to_string(HIGHS_VERSION_MINOR) + "." +
         std::to_string(HIGHS_VERSION_PATCH);
}

}  // namespace rosterlab::mip

namespace rosterlab::mip::detail {

namespace {

HighsLp to_highs(const MipModel& model) {
  HighsLp lp;
  lp.num_col_ = model.num_variables();
  lp.num_row_ = model.num_constraints();
  lp.sense_ = ObjSense::kMinimize;
  lp.offset_ = model.objective_offset();
  lp.col_cost_ = model.objective();
  lp.col_lower_.reserve(lp.num_col_);
  lp.col_upper_.reserve(lp.num_col_);
  lp.integrality_.reserve(lp.num_col_);
  for (const auto& v : model.variables()) {
    lp.col_lower_.push_back(v.lower);
    lp.col_upper_.push_back(std::isinf(v.upper) ? kHighsInf : v.upper);
    lp.integrality_.push_back(v.kind == VarKind::kContinuous ? HighsVarType::kContinuous
                                                             : HighsVarType::kInteger);
  }
  auto& a = lp.a_matrix_;
  a.format_ = MatrixFormat::kRowwise;
  a.num_col_ = lp.num_col_;
  a.num_row_ = lp.num_row_;
  a.start_.clear();
  a.start_.reserve(lp.num_row_ + 1);
  a.start_.push_back(0);
  for (const auto& c : model.constraints()) {
    for (const auto& t : c.terms) {
      a.index_.push_back(t.var.index);
      a.value_.push_back(t.coef);
    }
    a.start_.push_back(static_cast<HighsInt>(a.index_.size()));
    switch (c.sense) {
      case Sense::kLessEqual:
        lp.row_lower_.push_back(-kHighsInf);
        lp.row_upper_.push_back(c.rhs);
        break;
      case Sense::kGreaterEqual:
        lp.row_lower_.push_back(c.rhs);
        lp.row_upper_.push_back(kHighsInf);
        break;
      case Sense::kEqual:
        lp.row_lower_.push_back(c.rhs);
        lp.row_upper_.push_back(c.rhs);
        break;
    }
  }
  return lp;
}

}  // namespace

SolveOutcome solve_highs(const MipModel& model, const SolveControls& controls) {
  const auto start = std::chrono::steady_clock::now();
  SolveOutcome out;

  Highs highs;
  highs.setOptionValue("output_flag", false);
  highs.setOptionValue("mip_rel_gap", controls.gap_tolerance);
  highs.setOptionValue("time_limit", controls.time_limit_seconds);
  highs.setOptionValue("threads", controls.threads);
  highs.setOptionValue("random_seed", 0);
  highs.setOptionValue("mip_feasibility_tolerance", kIntegralityTolerance);

  if (highs.passModel(to_highs(model)) == HighsStatus::kError) {
    out.message = "HiGHS rejected the model";
    return out;
  }
  const HighsStatus run_status = highs.run();
  out.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (run_status == HighsStatus::kError) {
    out.message = "HiGHS run failed";
    return out;
  }

  const HighsInfo& info = highs.getInfo();
  const bool is_mip = model.num_integer_variables() > 0;
  const bool has_incumbent = info.primal_solution_status == kSolutionStatusFeasible;
  const auto status = highs.getModelStatus();
  out.gap = is_mip ? info.mip_gap : 0.0;

  switch (status) {
    case HighsModelStatus::kOptimal:
      out.status = (is_mip && out.gap > controls.gap_tolerance + 1e-12) ? SolveStatus::kFeasibleGap
                                                                         : SolveStatus::kOptimal;
      break;
    case HighsModelStatus::kInfeasible:
    case HighsModelStatus::kUnboundedOrInfeasible:
      out.status = SolveStatus::kInfeasible;
      return out;
    case HighsModelStatus::kTimeLimit:
      out.status = SolveStatus::kTimeLimit;
      break;
    case HighsModelStatus::kSolutionLimit:
    case HighsModelStatus::kIterationLimit:
    case HighsModelStatus::kInterrupt:
      out.status = has_incumbent ? SolveStatus::kFeasibleGap : SolveStatus::kError;
      break;
    default:
      out.status = SolveStatus::kError;
      out.message = "HiGHS model status: " + highs.modelStatusToString(status);
      return out;
  }
  if (has_incumbent) {
    out.values = highs.getSolution().col_value;
    out.objective_value = info.objective_function_value;
  }
  return out;
}

}  // namespace rosterlab::mip::detail
