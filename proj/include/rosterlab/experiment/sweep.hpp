#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rosterlab/core/types.hpp"
#include "rosterlab/mip/solver.hpp"
#include "rosterlab/reroster/reroster.hpp"
#include "rosterlab/sim/classifier.hpp"

namespace rosterlab {

enum class TruthMode {
  kShared,   // one prediction truth and one evaluation set for every cell
  kPerCell,  // each cell draws its own truth and its own evaluation set
};

std::string to_string(TruthMode mode);
TruthMode parse_truth_mode(const std::string& text);

/// Evenly spaced values 0, step, ..., 1 (1 included when step divides it).
std::vector<double> grid_values(double step);

struct SweepConfig {
  ProblemInstance instance;
  std::string instance_source;  // path or description, recorded in the manifest
  std::vector<double> tpr_values = grid_values(0.1);
  std::vector<double> rfpr_values = grid_values(0.1);
  double rho = 0.0264;
  int n_scenarios = 100;
  std::vector<int> baselines = {1, 2, 3, 4};
  mip::SolveControls controls;
  RerosterOptions reroster;
  std::uint64_t seed = 0;
  std::string seed_source = "explicit";  // "random" when drawn by the caller
  TruthMode truth_mode = TruthMode::kShared;

  // Execution settings; they do not change results.
  int jobs = 1;
  double budget_seconds = 0.0;  // cap on summed solver wall time, 0 for none

  /// Throws std::invalid_argument on grid values outside [0, 1],
  /// n_scenarios < 1, rho outside [0, 1], negative baselines or jobs < 1.
  void validate() const;
};

/// Settings that determine results, plus a hash of the instance.
nlohmann::ordered_json config_to_json(const SweepConfig& config);
/// Hex digest of config_to_json; a log written under another fingerprint
/// is refused on resume.
std::string config_fingerprint(const SweepConfig& config);

/// One row of the sweep: an ML grid cell or a fixed-k baseline.
struct CellSpec {
  std::string id;
  bool baseline = false;
  double tpr = 0.0;
  double rfpr = 0.0;
  int k = 0;

  std::string policy() const;  // "ml" or "fixed-k"
};

/// ML cells in (tpr, rfpr) row-major order, then the baselines.
std::vector<CellSpec> sweep_cells(const SweepConfig& config);

struct ScenarioRecord {
  int scenario = 0;
  std::string status;  // solver status or "error"
  bool solved = false;
  int absences = 0;
  double cost = 0.0;
  double base_cost = 0.0;
  double change_cost = 0.0;
  double pct_reserves_converted = 0.0;
  int reserve_conversions = 0;
  int working_shift_changes = 0;
  int dayoff_changes = 0;
  double gap = 0.0;
  double solve_s = 0.0;
};

struct CellRecord {
  CellSpec spec;
  std::string roster_status = "missing";
  bool roster_solved = false;
  double rostering_cost = 0.0;
  double reserves_per_day = 0.0;  // mean scheduled reserve shifts per day
  double roster_gap = 0.0;
  double roster_solve_s = 0.0;
  ConfusionTallies tallies;       // predictions against the prediction truth

  // Means over solved scenarios.
  double mean_reroster_cost = 0.0;
  double pct_reserves_converted = 0.0;
  double working_shift_changes = 0.0;
  double dayoff_changes = 0.0;
  double mean_solve_s = 0.0;
  double max_gap = 0.0;
  int n_optimal = 0;
  int n_gap = 0;     // incumbent with a positive gap or hit the time limit
  int n_failed = 0;  // no repair, including scenarios of a failed roster
  int n_missing = 0; // not run (truncated sweep)

  std::vector<ScenarioRecord> detail;  // sorted by scenario
};

struct SweepResult {
  std::vector<double> tpr_values;
  std::vector<double> rfpr_values;
  int n_scenarios = 0;
  std::vector<CellRecord> cells;
  bool truncated = false;
  nlohmann::ordered_json manifest;

  const CellRecord* find_ml(double tpr, double rfpr) const;
  const CellRecord* find_baseline(int k) const;
};

/// Recomputes the means and counts of a cell from its detail rows.
void aggregate(CellRecord& cell, int n_scenarios);

/// Writes `out_dir`/log.jsonl (append-only, resumable), results.csv,
/// detail.csv and manifest.json. Keys already present in the log are
/// reused. Solve failures are recorded, never thrown; I/O failures throw
/// std::runtime_error after flushing what is done.
/// `progress` receives one line per finished rostering solve.
SweepResult run_sweep(const SweepConfig& config, const std::filesystem::path& out_dir,
                      const std::function<void(const std::string&)>& progress = {});

/// Rebuilds the result of a sweep directory from its log and manifest.
SweepResult load_sweep(const std::filesystem::path& out_dir);

void write_results_csv(const SweepResult& result, const std::filesystem::path& path);
void write_detail_csv(const SweepResult& result, const std::filesystem::path& path);

struct RatioCell {
  double tpr = 0.0;
  double rfpr = 0.0;
  double ml_cost = 0.0;
  double baseline_cost = 0.0;
  std::optional<double> ratio;  // empty when the ML cell has no solved scenario
};

struct ContourSegment {
  double tpr0, rfpr0, tpr1, rfpr1;
};

struct RatioGrid {
  int k = 0;
  std::vector<double> tpr_values;
  std::vector<double> rfpr_values;
  std::vector<RatioCell> cells;  // row-major over (tpr, rfpr)
  std::vector<ContourSegment> unit_contour;
};

/// mean_reroster_cost of a cell over that of a baseline. Throws
/// std::domain_error for a zero or unsolved denominator.
double cost_ratio(const CellRecord& numerator, const CellRecord& baseline);

/// Ratio of every ML cell against baseline k, plus the ratio = 1 level set
/// by marching squares on the (tpr, rfpr) grid. Throws
/// std::invalid_argument if baseline k is absent.
RatioGrid compare_to_baseline(const SweepResult& sweep, int k);

/// Marching squares at `level` over values[i][j] sampled at (xs[i], ys[j]).
/// Cells with a missing corner are skipped.
std::vector<ContourSegment> level_contour(const std::vector<double>& xs,
                                          const std::vector<double>& ys,
                                          const std::vector<std::optional<double>>& values,
                                          double level);

void write_ratio_csv(const RatioGrid& grid, const std::filesystem::path& path);
void write_contour_csv(const RatioGrid& grid, const std::filesystem::path& path);

/// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace rosterlab
