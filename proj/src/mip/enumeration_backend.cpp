// Dense two-phase simplex plus depth-first branch and bound. Meant for models
// with a handful of rows and at most kEnumerationMaxIntegers integer
// variables; serves as an independent check on the production backend.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>

#include "rosterlab/mip/solver.hpp"

namespace rosterlab::mip::detail {

namespace {

constexpr double kEps = 1e-9;

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
};

struct DenseRow {
  std::vector<double> coef;
  Sense sense;
  double rhs;
};

class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), t_(rows * (cols + 1), 0.0) {}

  double& at(int r, int c) { return t_[r * (cols_ + 1) + c]; }
  double& rhs(int r) { return at(r, cols_); }

  void pivot(int pr, int pc, std::vector<double>& cost) {
    const double p = at(pr, pc);
    for (int c = 0; c <= cols_; ++c) at(pr, c) /= p;
    for (int r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (std::abs(f) < kEps) continue;
      for (int c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
    }
    const double f = cost[pc];
    if (std::abs(f) >= kEps) {
      for (int c = 0; c <= cols_; ++c) cost[c] -= f * at(pr, c);
    }
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  int rows_;
  int cols_;
  std::vector<double> t_;
};

// Bland's rule; `cost` holds reduced costs with -objective in the last slot.
// Returns false when unbounded.
bool run_simplex(Tableau& t, std::vector<int>& basis, std::vector<double>& cost,
                 const std::vector<char>& may_enter) {
  for (;;) {
    int enter = -1;
    for (int c = 0; c < t.cols(); ++c) {
      if (may_enter[c] && cost[c] < -kEps) {
        enter = c;
        break;
      }
    }
    if (enter < 0) return true;
    int leave = -1;
    double best = 0.0;
    for (int r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, enter);
      if (a <= kEps) continue;
      const double ratio = t.rhs(r) / a;
      if (leave < 0 || ratio < best - kEps ||
          (std::abs(ratio - best) <= kEps && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave < 0) return false;
    t.pivot(leave, enter, cost);
    basis[leave] = enter;
  }
}

LpResult solve_lp(const MipModel& model, const std::vector<double>& lower,
                  const std::vector<double>& upper) {
  const int n = model.num_variables();
  LpResult result;
  for (int j = 0; j < n; ++j) {
    if (upper[j] < lower[j] - kEps) return result;
  }

  // Shift x = lower + x' so every structural column is >= 0.
  std::vector<DenseRow> rows;
  for (const auto& c : model.constraints()) {
    DenseRow row{std::vector<double>(n, 0.0), c.sense, c.rhs};
    for (const auto& term : c.terms) {
      row.coef[term.var.index] += term.coef;
      row.rhs -= term.coef * lower[term.var.index];
    }
    rows.push_back(std::move(row));
  }
  for (int j = 0; j < n; ++j) {
    if (std::isinf(upper[j])) continue;
    DenseRow row{std::vector<double>(n, 0.0), Sense::kLessEqual, upper[j] - lower[j]};
    row.coef[j] = 1.0;
    rows.push_back(std::move(row));
  }
  for (auto& row : rows) {
    if (row.rhs < 0) {
      for (double& v : row.coef) v = -v;
      row.rhs = -row.rhs;
      if (row.sense == Sense::kLessEqual) {
        row.sense = Sense::kGreaterEqual;
      } else if (row.sense == Sense::kGreaterEqual) {
        row.sense = Sense::kLessEqual;
      }
    }
  }

  const int m = static_cast<int>(rows.size());
  int n_slack = 0;
  int n_art = 0;
  for (const auto& row : rows) {
    if (row.sense != Sense::kEqual) ++n_slack;
    if (row.sense != Sense::kLessEqual) ++n_art;
  }
  const int cols = n + n_slack + n_art;
  const int first_art = n + n_slack;
  Tableau t(m, cols);
  std::vector<int> basis(m, -1);
  int slack = n;
  int art = first_art;
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < n; ++j) t.at(r, j) = rows[r].coef[j];
    t.rhs(r) = rows[r].rhs;
    switch (rows[r].sense) {
      case Sense::kLessEqual:
        t.at(r, slack) = 1.0;
        basis[r] = slack++;
        break;
      case Sense::kGreaterEqual:
        t.at(r, slack++) = -1.0;
        t.at(r, art) = 1.0;
        basis[r] = art++;
        break;
      case Sense::kEqual:
        t.at(r, art) = 1.0;
        basis[r] = art++;
        break;
    }
  }

  std::vector<char> may_enter(cols, 1);
  if (n_art > 0) {
    std::vector<double> cost(cols + 1, 0.0);
    for (int r = 0; r < m; ++r) {
      if (basis[r] < first_art) continue;
      for (int c = 0; c <= cols; ++c) {
        if (c < first_art || c == cols) cost[c] -= t.at(r, c);
      }
    }
    run_simplex(t, basis, cost, may_enter);
    if (-cost[cols] > 1e-7) return result;  // infeasible
    for (int r = 0; r < m; ++r) {
      if (basis[r] < first_art) continue;
      for (int c = 0; c < first_art; ++c) {
        if (std::abs(t.at(r, c)) > kEps) {
          t.pivot(r, c, cost);
          basis[r] = c;
          break;
        }
      }
    }
    for (int c = first_art; c < cols; ++c) may_enter[c] = 0;
  }

  std::vector<double> cost(cols + 1, 0.0);
  const auto& obj = model.objective();
  for (int j = 0; j < n; ++j) cost[j] = obj[j];
  for (int r = 0; r < m; ++r) {
    const int b = basis[r];
    const double cb = b < n ? obj[b] : 0.0;
    if (cb == 0.0) continue;
    for (int c = 0; c <= cols; ++c) cost[c] -= cb * t.at(r, c);
  }
  if (!run_simplex(t, basis, cost, may_enter)) {
    result.status = LpStatus::kUnbounded;
    return result;
  }

  result.status = LpStatus::kOptimal;
  result.x = lower;
  for (int r = 0; r < m; ++r) {
    if (basis[r] < n) result.x[basis[r]] += t.rhs(r);
  }
  result.objective = model.objective_offset();
  for (int j = 0; j < n; ++j) result.objective += obj[j] * result.x[j];
  return result;
}

class BranchAndBound {
 public:
  BranchAndBound(const MipModel& model, double time_limit)
      : model_(model), deadline_(std::chrono::steady_clock::now() +
                                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                     std::chrono::duration<double>(time_limit))) {}

  void run() {
    std::vector<double> lower;
    std::vector<double> upper;
    for (const auto& v : model_.variables()) {
      lower.push_back(v.lower);
      upper.push_back(v.upper);
    }
    explore(lower, upper);
  }

  bool timed_out() const { return timed_out_; }
  bool unbounded() const { return unbounded_; }
  const std::optional<LpResult>& incumbent() const { return incumbent_; }

 private:
  void explore(std::vector<double>& lower, std::vector<double>& upper) {
    if (std::chrono::steady_clock::now() > deadline_) {
      timed_out_ = true;
      return;
    }
    LpResult lp = solve_lp(model_, lower, upper);
    if (lp.status == LpStatus::kUnbounded) {
      unbounded_ = true;
      return;
    }
    if (lp.status != LpStatus::kOptimal) return;
    if (incumbent_ && lp.objective >= incumbent_->objective - kEps) return;

    int branch = -1;
    double most = 0.0;
    for (int j = 0; j < model_.num_variables(); ++j) {
      if (model_.variables()[j].kind == VarKind::kContinuous) continue;
      const double frac = std::abs(lp.x[j] - std::round(lp.x[j]));
      if (frac > kIntegralityTolerance && frac > most) {
        most = frac;
        branch = j;
      }
    }
    if (branch < 0) {
      incumbent_ = std::move(lp);
      return;
    }
    const double value = lp.x[branch];
    const double down = std::floor(value);
    const double saved_lower = lower[branch];
    const double saved_upper = upper[branch];
    const bool down_first = value - down < 0.5;
    for (int side = 0; side < 2 && !timed_out_ && !unbounded_; ++side) {
      if ((side == 0) == down_first) {
        upper[branch] = down;
      } else {
        lower[branch] = down + 1.0;
      }
      explore(lower, upper);
      lower[branch] = saved_lower;
      upper[branch] = saved_upper;
    }
  }

  const MipModel& model_;
  std::chrono::steady_clock::time_point deadline_;
  std::optional<LpResult> incumbent_;
  bool timed_out_ = false;
  bool unbounded_ = false;
};

}  // namespace

SolveOutcome solve_enumeration(const MipModel& model, const SolveControls& controls) {
  if (model.num_integer_variables() > kEnumerationMaxIntegers) {
    throw ModelError("enumeration backend accepts at most " +
                     std::to_string(kEnumerationMaxIntegers) + " integer variables, model has " +
                     std::to_string(model.num_integer_variables()));
  }
  const auto start = std::chrono::steady_clock::now();
  BranchAndBound bnb(model, controls.time_limit_seconds);
  bnb.run();

  SolveOutcome out;
  out.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (bnb.unbounded()) {
    out.status = SolveStatus::kError;
    out.message = "LP relaxation is unbounded";
    return out;
  }
  if (bnb.incumbent()) {
    out.values = bnb.incumbent()->x;
    out.objective_value = bnb.incumbent()->objective;
  }
  if (bnb.timed_out()) {
    out.status = SolveStatus::kTimeLimit;
  } else {
    out.status = bnb.incumbent() ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
  }
  return out;
}

}  // namespace rosterlab::mip::detail
