#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rosterlab/core/generator.hpp"
#include "rosterlab/experiment/sweep.hpp"

using namespace rosterlab;
namespace fs = std::filesystem;

namespace {

SweepConfig small_config(const std::string& name) {
  GeneratorConfig g;
  g.employees = 10;
  g.days = 7;
  g.min_work_days = 3;
  g.max_work_days = 5;
  g.max_reserve_shifts = 2;
  g.demand_min_per_shift = 1;
  g.demand_max_per_shift = 1;
  SweepConfig c;
  c.instance = generate_instance(g, 11).instance;
  c.instance_source = name;
  c.tpr_values = {0.0, 1.0};
  c.rfpr_values = {0.0, 1.0};
  c.rho = 0.1;
  c.n_scenarios = 3;
  c.baselines = {0, 1};
  c.seed = 42;
  return c;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("rosterlab_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int line_count(const fs::path& path) {
  const std::string s = slurp(path);
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

// Records with wall times blanked, for comparing runs.
std::string timeless(const SweepResult& r) {
  std::ostringstream out;
  for (const auto& c : r.cells) {
    out << c.spec.id << ' ' << c.roster_status << ' ' << c.rostering_cost << ' '
        << c.reserves_per_day << ' ' << c.mean_reroster_cost << ' ' << c.pct_reserves_converted
        << ' ' << c.working_shift_changes << ' ' << c.dayoff_changes << ' ' << c.n_optimal
        << ' ' << c.n_gap << ' ' << c.n_failed << '\n';
    for (const auto& s : c.detail) {
      out << "  " << s.scenario << ' ' << s.status << ' ' << s.absences << ' ' << s.cost << ' '
          << s.reserve_conversions << ' ' << s.working_shift_changes << ' ' << s.dayoff_changes
          << '\n';
    }
  }
  return out.str();
}

}  // namespace

TEST_CASE("grid values") {
  CHECK(grid_values(0.1).size() == 11);
  CHECK(grid_values(0.1)[3] == 0.3);
  CHECK(grid_values(0.5) == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(grid_values(1.0) == std::vector<double>{0.0, 1.0});
  CHECK_THROWS_AS(grid_values(0.0), std::invalid_argument);
  CHECK_THROWS_AS(grid_values(1.5), std::invalid_argument);
}

TEST_CASE("default sweep has 121 cells and four baselines") {
  SweepConfig c;
  const auto cells = sweep_cells(c);
  REQUIRE(cells.size() == 125);
  CHECK(std::count_if(cells.begin(), cells.end(), [](auto& s) { return s.baseline; }) == 4);
  CHECK(cells.front().id == "ml/tpr=0/rfpr=0");
  CHECK(cells.back().policy() == "fixed-4");
  c.tpr_values = c.rfpr_values = grid_values(0.5);
  CHECK(sweep_cells(c).size() == 9 + 4);
}

TEST_CASE("sweep config validation") {
  auto c = small_config("v");
  c.tpr_values = {1.2};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = small_config("v");
  c.n_scenarios = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = small_config("v");
  c.baselines = {-1};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = small_config("v");
  c.jobs = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("fingerprint ignores execution settings") {
  auto a = small_config("a");
  auto b = small_config("b");
  b.jobs = 4;
  b.budget_seconds = 10.0;
  CHECK(config_fingerprint(a) == config_fingerprint(b));
  b.seed = 43;
  CHECK(config_fingerprint(a) != config_fingerprint(b));
}

TEST_CASE("sweep semantics, persistence and resume") {
  const auto config = small_config("semantics");
  const fs::path dir = fs::temp_directory_path() / "rosterlab_test_semantics";
  // Every subcase re-enters the test case; the sweep itself runs once.
  static const SweepResult r = run_sweep(config, fresh_dir("semantics"));
  CHECK_FALSE(r.truncated);
  CHECK(r.manifest["status"] == "complete");
  REQUIRE(r.cells.size() == 6);

  const CellRecord* corner = r.find_ml(0.0, 0.0);
  const CellRecord* k0 = r.find_baseline(0);
  REQUIRE(corner);
  REQUIRE(k0);
  CHECK(corner->reserves_per_day == 0.0);
  CHECK(corner->rostering_cost == k0->rostering_cost);
  CHECK(r.find_ml(1.0, 1.0)->rostering_cost >= corner->rostering_cost - 1e-6);
  CHECK(r.find_baseline(1)->reserves_per_day == 1.0);

  SUBCASE("means equal the detail rows") {
    for (const auto& c : r.cells) {
      REQUIRE(c.detail.size() == 3);
      double cost = 0, pct = 0, shift = 0, dayoff = 0;
      for (const auto& s : c.detail) {
        REQUIRE(s.solved);
        cost += s.cost;
        pct += s.pct_reserves_converted;
        shift += s.working_shift_changes;
        dayoff += s.dayoff_changes;
        CHECK(s.cost == doctest::Approx(s.base_cost + s.change_cost));
      }
      CHECK(c.mean_reroster_cost == doctest::Approx(cost / 3));
      CHECK(c.pct_reserves_converted == doctest::Approx(pct / 3));
      CHECK(c.working_shift_changes == doctest::Approx(shift / 3));
      CHECK(c.dayoff_changes == doctest::Approx(dayoff / 3));
      CHECK(c.n_optimal + c.n_gap == 3);
    }
  }

  SUBCASE("shared truth evaluates every cell on the same scenarios") {
    for (const auto& c : r.cells) {
      for (std::size_t i = 0; i < c.detail.size(); ++i) {
        CHECK(c.detail[i].absences == r.cells.front().detail[i].absences);
      }
    }
  }

  SUBCASE("output files") {
    CHECK(line_count(dir / "results.csv") == 7);
    CHECK(line_count(dir / "detail.csv") == 1 + 6 * 3);
    CHECK(slurp(dir / "results.csv").rfind(
              "tpr,rfpr,rostering_cost,reserves_per_day,mean_reroster_cost,"
              "pct_reserves_converted,working_shift_changes,dayoff_changes,n_optimal,n_gap,"
              "mean_solve_s,policy",
              0) == 0);
    CHECK(line_count(dir / "log.jsonl") == 1 + 6 + 6 * 3);
  }

  SUBCASE("resume skips completed keys") {
    const std::string log = slurp(dir / "log.jsonl");
    const SweepResult again = run_sweep(config, dir);
    CHECK(slurp(dir / "log.jsonl") == log);
    CHECK(timeless(again) == timeless(r));
  }

  SUBCASE("load rebuilds the same records") {
    CHECK(timeless(load_sweep(dir)) == timeless(r));
  }

  SUBCASE("a different configuration is refused") {
    auto other = config;
    other.seed = 7;
    CHECK_THROWS_AS(run_sweep(other, dir), std::invalid_argument);
  }

  SUBCASE("a torn final record is dropped on resume") {
    {
      std::ofstream out(dir / "log.jsonl", std::ios::app);
      out << "{\"type\":\"reros";
    }
    const SweepResult again = run_sweep(config, dir);
    CHECK(timeless(again) == timeless(r));
  }

  SUBCASE("ratios against a baseline") {
    const RatioGrid g = compare_to_baseline(r, 1);
    CHECK(g.cells.size() == 4);
    for (const auto& c : g.cells) {
      REQUIRE(c.ratio);
      CHECK(*c.ratio == doctest::Approx(c.ml_cost / c.baseline_cost));
    }
    const CellRecord& base = *r.find_baseline(1);
    CHECK(cost_ratio(base, base) == 1.0);
    CHECK_THROWS_AS(compare_to_baseline(r, 3), std::invalid_argument);
  }
}

TEST_CASE("parallel and serial sweeps agree") {
  auto config = small_config("parallel");
  const SweepResult serial = run_sweep(config, fresh_dir("serial"));
  config.jobs = 3;
  const SweepResult parallel = run_sweep(config, fresh_dir("parallel"));
  CHECK(timeless(serial) == timeless(parallel));
}

TEST_CASE("per-cell truth draws separate evaluation sets") {
  auto config = small_config("percell");
  config.truth_mode = TruthMode::kPerCell;
  config.rho = 0.2;
  config.n_scenarios = 2;
  config.baselines = {};
  const SweepResult a = run_sweep(config, fresh_dir("percell_a"));
  const SweepResult b = run_sweep(config, fresh_dir("percell_b"));
  CHECK(timeless(a) == timeless(b));
  bool differs = false;
  for (const auto& c : a.cells) {
    for (std::size_t i = 0; i < c.detail.size(); ++i) {
      differs |= c.detail[i].absences != a.cells.front().detail[i].absences;
    }
  }
  CHECK(differs);
}

TEST_CASE("budget guard truncates and a resume completes") {
  auto config = small_config("budget");
  config.budget_seconds = 1e-9;
  const fs::path dir = fresh_dir("budget");
  const SweepResult cut = run_sweep(config, dir);
  CHECK(cut.truncated);
  CHECK(cut.manifest["status"] == "truncated");
  int missing = 0;
  for (const auto& c : cut.cells) missing += c.n_missing + (c.roster_status == "missing");
  CHECK(missing > 0);

  config.budget_seconds = 0.0;
  const SweepResult done = run_sweep(config, dir);
  CHECK_FALSE(done.truncated);
  CHECK(timeless(done) == timeless(run_sweep(config, fresh_dir("budget_ref"))));
}

TEST_CASE("failed rosters are recorded, not thrown") {
  auto config = small_config("failed");
  // Far beyond what the enumeration backend accepts.
  config.controls.backend = mip::Backend::kEnumeration;
  config.tpr_values = {0.0};
  config.rfpr_values = {0.0};
  config.baselines = {};
  const SweepResult r = run_sweep(config, fresh_dir("failed"));
  REQUIRE(r.cells.size() == 1);
  CHECK_FALSE(r.cells[0].roster_solved);
  CHECK(r.cells[0].roster_status == "error");
  CHECK(r.cells[0].n_failed == 3);
}

TEST_CASE("cost ratio rejects an empty baseline") {
  CellRecord base;
  base.spec.id = "fixed-1";
  CellRecord cell;
  cell.mean_reroster_cost = 10;
  CHECK_THROWS_AS(cost_ratio(cell, base), std::domain_error);
}

TEST_CASE("unit contour by marching squares") {
  const std::vector<double> xs{0.0, 1.0};
  const std::vector<double> ys{0.0, 1.0};
  SUBCASE("straight crossing") {
    // values[i][j] at (xs[i], ys[j]); ratio rises with x.
    const auto seg = level_contour(xs, ys, {0.5, 0.5, 1.5, 1.5}, 1.0);
    REQUIRE(seg.size() == 1);
    CHECK(seg[0].tpr0 == doctest::Approx(0.5));
    CHECK(seg[0].tpr1 == doctest::Approx(0.5));
    CHECK(std::abs(seg[0].rfpr0 - seg[0].rfpr1) == doctest::Approx(1.0));
  }
  SUBCASE("constant grid has no crossing") {
    CHECK(level_contour(xs, ys, {1.0, 1.0, 1.0, 1.0}, 1.0).empty());
  }
  SUBCASE("saddle gives two segments") {
    CHECK(level_contour(xs, ys, {2.0, 0.0, 0.0, 2.0}, 1.0).size() == 2);
  }
  SUBCASE("missing corners are skipped") {
    CHECK(level_contour(xs, ys, {0.5, std::nullopt, 1.5, 1.5}, 1.0).empty());
  }
}

TEST_CASE("spearman correlation") {
  CHECK(spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
  CHECK(spearman({1, 2, 3, 4}, {9, 7, 5, 1}) == doctest::Approx(-1.0));
  // Ranks with ties: y -> 1.5, 1.5, 3, 4; Pearson of ranks.
  CHECK(spearman({1, 2, 3, 4}, {5, 5, 6, 7}) == doctest::Approx(0.9486833));
  CHECK(std::isnan(spearman({1, 2, 3}, {4, 4, 4})));
  CHECK_THROWS_AS(spearman({1}, {2}), std::invalid_argument);
}

TEST_CASE("ratio CSV over the full grid has 121 rows") {
  SweepResult sweep;
  sweep.tpr_values = sweep.rfpr_values = grid_values(0.1);
  sweep.n_scenarios = 1;
  auto solved_cell = [](CellSpec spec, double cost) {
    CellRecord c;
    c.spec = spec;
    c.roster_status = "optimal";
    c.roster_solved = true;
    c.detail.push_back({0, "optimal", true, 1, cost});
    aggregate(c, 1);
    return c;
  };
  for (double t : sweep.tpr_values) {
    for (double r : sweep.rfpr_values) {
      sweep.cells.push_back(solved_cell({"", false, t, r, 0}, 1000.0 - 200.0 * t + 100.0 * r));
    }
  }
  sweep.cells.push_back(solved_cell({"fixed-1", true, 0, 0, 1}, 950.0));
  const RatioGrid g = compare_to_baseline(sweep, 1);
  const fs::path path = fs::temp_directory_path() / "rosterlab_test_ratio.csv";
  write_ratio_csv(g, path);
  CHECK(line_count(path) == 1 + 121);
  // Ratio 1 where 200 t - 100 r = 50: the contour crosses the grid.
  CHECK_FALSE(g.unit_contour.empty());
  for (const auto& s : g.unit_contour) {
    CHECK(200 * s.tpr0 - 100 * s.rfpr0 == doctest::Approx(50.0));
    CHECK(200 * s.tpr1 - 100 * s.rfpr1 == doctest::Approx(50.0));
  }
}
