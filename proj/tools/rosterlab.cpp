// Command-line front end: generate, roster, reroster, sweep, report.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "rosterlab/core/generator.hpp"
#include "rosterlab/core/instance_io.hpp"
#include "rosterlab/experiment/sweep.hpp"
#include "rosterlab/reroster/reroster.hpp"
#include "rosterlab/roster/roster.hpp"
#include "rosterlab/roster/rostering_model.hpp"
#include "rosterlab/sim/scenarios.hpp"

namespace fs = std::filesystem;
using namespace rosterlab;

namespace {

// Raised for bad flag values that CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void print_error(const std::string& kind, const std::string& message) {
  nlohmann::ordered_json e{{"error", kind}, {"message", message}};
  std::cerr << e.dump() << std::endl;
}

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return nlohmann::json::parse(in);
}

void emit(const nlohmann::ordered_json& doc, const std::string& out) {
  if (out.empty()) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream f(out);
  f << doc.dump(2) << '\n';
  if (!f) throw std::runtime_error("cannot write " + out);
}

// "k" for k reserves every day, "a,b,c" per day, or a JSON file.
ReserveRequirement parse_reserve(const std::string& text, int days) {
  if (text.empty()) return ReserveRequirement::zeros(days);
  if (fs::exists(text)) return reserve_from_json(read_json(text));
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--reserve expects k, a comma list or a JSON file, got '" + text + "'");
    }
  }
  if (values.size() == 1) return baseline_policy(values.front(), days);
  return {values};
}

struct SolverFlags {
  double gap = 1e-4;
  double time_limit = 100.0;
  std::string backend = "highs";

  void add(CLI::App* app) {
    app->add_option("--gap", gap, "Relative MIP gap")->capture_default_str();
    app->add_option("--time-limit", time_limit, "Seconds per solve")->capture_default_str();
    app->add_option("--backend", backend, "highs or enumeration")->capture_default_str();
  }
  mip::SolveControls controls() const {
    mip::SolveControls c;
    c.gap_tolerance = gap;
    c.time_limit_seconds = time_limit;
    c.backend = mip::parse_backend(backend);
    return c;
  }
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, std::string& source) {
  if (seed) {
    source = "explicit";
    return *seed;
  }
  std::random_device rd;
  const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) | rd();
  source = "random";
  std::cerr << "seed " << s << '\n';
  return s;
}

void print_costs(const RosterCosts& c) {
  std::printf("wages %.10g\novertime %.10g\nunderstaffing %.10g\nreserve_wages %.10g\n"
              "reserve_shortfall %.10g\ntotal %.10g\n",
              c.wages, c.overtime_cost, c.understaff_cost, c.reserve_wages,
              c.shortfall_penalty, c.total);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reserve-shift rostering with predicted absences"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a ward instance");
  GeneratorConfig gcfg;
  std::string skill_mode = "uniform";
  std::optional<std::uint64_t> gen_seed;
  std::string gen_out;
  gen->add_option("--employees", gcfg.employees)->capture_default_str();
  gen->add_option("--days", gcfg.days)->capture_default_str();
  gen->add_option("--skill-mode", skill_mode, "uniform or hierarchical")->capture_default_str();
  gen->add_option("--type-counts", gcfg.type_counts,
                  "Head nurses, nurses, caretakers, trainees (hierarchical)");
  gen->add_option("--min-work", gcfg.min_work_days)->capture_default_str();
  gen->add_option("--max-work", gcfg.max_work_days)->capture_default_str();
  gen->add_option("--max-reserve", gcfg.max_reserve_shifts)->capture_default_str();
  gen->add_option("--demand-min", gcfg.demand_min_per_shift)->capture_default_str();
  gen->add_option("--demand-max", gcfg.demand_max_per_shift)->capture_default_str();
  gen->add_option("--seed", gen_seed);
  gen->add_option("--out", gen_out, "Instance JSON (stdout if omitted)");

  // roster
  auto* ros = app.add_subcommand("roster", "Solve one rostering problem");
  std::string ros_instance, ros_reserve, ros_out;
  bool ros_plain = false;
  SolverFlags ros_solver;
  ros->add_option("--instance", ros_instance)->required()->check(CLI::ExistingFile);
  ros->add_option("--reserve", ros_reserve, "k, per-day list a,b,c or JSON file");
  ros->add_flag("--no-conversion-safety", ros_plain, "Drop the reserve conversion constraints");
  ros->add_option("--out", ros_out, "Write the roster JSON");
  ros_solver.add(ros);

  // reroster
  auto* rer = app.add_subcommand("reroster", "Repair one roster against one absence scenario");
  std::string rer_instance, rer_roster, rer_scenario, rer_out, rer_scope = "absence-days";
  std::optional<std::uint64_t> rer_seed;
  int rer_index = 0;
  double rer_rho = 0.0264;
  bool rer_keep = false;
  SolverFlags rer_solver;
  rer->add_option("--instance", rer_instance)->required()->check(CLI::ExistingFile);
  rer->add_option("--roster", rer_roster, "Roster JSON from `roster --out`")
      ->required()
      ->check(CLI::ExistingFile);
  rer->add_option("--scenario", rer_scenario, "Scenario JSON; drawn from --seed if omitted")
      ->check(CLI::ExistingFile);
  rer->add_option("--seed", rer_seed);
  rer->add_option("--scenario-index", rer_index)->capture_default_str();
  rer->add_option("--rho", rer_rho)->capture_default_str();
  rer->add_flag("--keep-reserve", rer_keep, "Keep the original reserve requirement");
  rer->add_option("--absentee-scope", rer_scope, "absence-days or whole-period")
      ->capture_default_str();
  rer->add_option("--out", rer_out, "Write the repair JSON");
  rer_solver.add(rer);

  // sweep
  auto* swp = app.add_subcommand("sweep", "Run the TPR x rFPR study");
  std::string swp_instance, swp_out, swp_truth = "shared", swp_scope = "absence-days";
  std::optional<std::uint64_t> swp_seed;
  std::optional<double> swp_tpr, swp_rfpr;
  double swp_step = 0.1, swp_budget = 0.0;
  SweepConfig scfg;
  std::vector<int> swp_baselines = {1, 2, 3, 4};
  bool swp_keep = false, swp_quiet = false;
  SolverFlags swp_solver;
  swp->add_option("--instance", swp_instance, "Instance JSON; a generated ward if omitted")
      ->check(CLI::ExistingFile);
  swp->add_option("--seed", swp_seed);
  swp->add_option("--scenarios", scfg.n_scenarios)->capture_default_str();
  swp->add_option("--grid-step", swp_step)->capture_default_str();
  swp->add_option("--tpr", swp_tpr, "Single tpr value instead of the grid");
  swp->add_option("--rfpr", swp_rfpr, "Single rfpr value instead of the grid");
  swp->add_option("--baseline", swp_baselines, "Fixed-k baselines")->capture_default_str();
  swp->add_option("--rho", scfg.rho)->capture_default_str();
  swp->add_option("--truth-mode", swp_truth, "shared or per-cell")->capture_default_str();
  swp->add_option("--jobs", scfg.jobs)->capture_default_str();
  swp->add_option("--budget", swp_budget, "Cap on summed solver seconds, 0 for none")
      ->capture_default_str();
  swp->add_flag("--keep-reserve", swp_keep, "Keep the reserve requirement when rerostering");
  swp->add_option("--absentee-scope", swp_scope)->capture_default_str();
  swp->add_option("--out", swp_out, "Output directory")->required();
  swp->add_flag("--quiet", swp_quiet);
  swp_solver.add(swp);

  // report
  auto* rep = app.add_subcommand("report", "Rebuild CSVs and baseline ratios from a sweep");
  std::string rep_out;
  std::vector<int> rep_baselines;
  rep->add_option("--out", rep_out, "Sweep directory")->required()->check(CLI::ExistingDirectory);
  rep->add_option("--baseline", rep_baselines, "Baselines to compare against (all if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return 2;
  }

  try {
    if (*gen) {
      gcfg.skill_mode = parse_skill_mode(skill_mode);
      std::string source;
      const auto seed = resolve_seed(gen_seed, source);
      const auto g = generate_instance(gcfg, seed);
      for (const auto& w : g.warnings) std::cerr << "warning: " << w << '\n';
      if (gen_out.empty()) {
        std::cout << instance_to_json(g.instance).dump(2) << '\n';
      } else {
        save_instance(g.instance, gen_out);
      }
    } else if (*ros) {
      const auto inst = load_instance(ros_instance);
      const auto reserve = parse_reserve(ros_reserve, inst.days);
      RosteringOptions opts;
      opts.conversion_safe = !ros_plain;
      const Roster r = solve_rostering(inst, reserve, ros_solver.controls(), opts);
      std::printf("status %s\ngap %.6g\nsolve_s %.3f\n", mip::to_string(r.solve.status).c_str(),
                  r.solve.gap, r.solve.wall_time);
      print_costs(r.costs);
      if (!ros_out.empty()) emit(roster_to_json(inst, r), ros_out);
    } else if (*rer) {
      const auto inst = load_instance(rer_instance);
      const Roster original = roster_from_json(inst, read_json(rer_roster));
      AbsenceScenario scenario;
      if (!rer_scenario.empty()) {
        scenario = scenario_from_json(read_json(rer_scenario));
      } else {
        std::string source;
        scenario = generate_scenario(inst.num_employees(), inst.days, rer_rho,
                                     resolve_seed(rer_seed, source), rer_index);
      }
      RerosterOptions opts;
      opts.keep_reserve_requirement = rer_keep;
      opts.absentee_scope = parse_absentee_scope(rer_scope);
      const RerosterResult r =
          solve_rerostering(inst, original, scenario, rer_solver.controls(), opts);
      std::printf("status %s\nabsences %d\nbase_cost %.10g\nchange_cost %.10g\n"
                  "reserve_conversions %d\nworking_shift_changes %d\ndayoff_changes %d\n"
                  "total %.10g\n",
                  mip::to_string(r.roster.solve.status).c_str(), scenario.total_absences(),
                  r.costs.base_cost, r.costs.change_cost, r.metrics.reserve_conversions,
                  r.metrics.working_shift_changes, r.metrics.dayoff_changes, r.costs.total);
      if (!rer_out.empty()) emit(reroster_to_json(inst, r), rer_out);
    } else if (*swp) {
      scfg.seed = resolve_seed(swp_seed, scfg.seed_source);
      if (swp_instance.empty()) {
        scfg.instance = generate_instance(GeneratorConfig{}, scfg.seed).instance;
        scfg.instance_source = "generated ward, default shape, seed " + std::to_string(scfg.seed);
      } else {
        scfg.instance = load_instance(swp_instance);
        scfg.instance_source = swp_instance;
      }
      scfg.tpr_values = swp_tpr ? std::vector<double>{*swp_tpr} : grid_values(swp_step);
      scfg.rfpr_values = swp_rfpr ? std::vector<double>{*swp_rfpr} : grid_values(swp_step);
      scfg.baselines = swp_baselines;
      scfg.truth_mode = parse_truth_mode(swp_truth);
      scfg.budget_seconds = swp_budget;
      scfg.controls = swp_solver.controls();
      scfg.reroster.keep_reserve_requirement = swp_keep;
      scfg.reroster.absentee_scope = parse_absentee_scope(swp_scope);
      auto progress = [&](const std::string& line) {
        if (!swp_quiet) std::cerr << line << '\n';
      };
      const SweepResult r = run_sweep(scfg, swp_out, progress);
      std::printf("cells %zu\nstatus %s\nout %s\n", r.cells.size(),
                  r.manifest.at("status").get<std::string>().c_str(), swp_out.c_str());
    } else if (*rep) {
      const fs::path dir = rep_out;
      const SweepResult r = load_sweep(dir);
      write_results_csv(r, dir / "results.csv");
      write_detail_csv(r, dir / "detail.csv");
      if (rep_baselines.empty()) {
        for (const auto& c : r.cells) {
          if (c.spec.baseline) rep_baselines.push_back(c.spec.k);
        }
      }
      for (int k : rep_baselines) {
        const RatioGrid grid = compare_to_baseline(r, k);
        const std::string suffix = "_k" + std::to_string(k) + ".csv";
        write_ratio_csv(grid, dir / ("ratio" + suffix));
        write_contour_csv(grid, dir / ("contour" + suffix));
        std::printf("ratio k=%d rows %zu contour_segments %zu\n", k, grid.cells.size(),
                    grid.unit_contour.size());
      }
      std::printf("status %s\n", r.truncated ? "truncated" : "complete");
    }
  } catch (const UsageError& e) {
    print_error("usage", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    print_error("invalid_argument", e.what());
    return 2;
  } catch (const InstanceError& e) {
    print_error("instance", e.what());
    return 1;
  } catch (const SolveError& e) {
    print_error("solve_" + mip::to_string(e.status()), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("runtime", e.what());
    return 1;
  }
  return 0;
}
