#include "rosterlab/experiment/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <deque>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "rosterlab/core/instance_io.hpp"
#include "rosterlab/roster/roster.hpp"
#include "rosterlab/roster/rostering_model.hpp"
#include "rosterlab/sim/scenarios.hpp"
#include "rosterlab/util/rng.hpp"

namespace rosterlab {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

#ifndef ROSTERLAB_VERSION
#define ROSTERLAB_VERSION "unknown"
#endif

std::string to_string(TruthMode mode) {
  return mode == TruthMode::kShared ? "shared" : "per-cell";
}

TruthMode parse_truth_mode(const std::string& text) {
  if (text == "shared") return TruthMode::kShared;
  if (text == "per-cell") return TruthMode::kPerCell;
  throw std::invalid_argument("unknown truth mode '" + text + "'");
}

std::vector<double> grid_values(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw std::invalid_argument("grid step must lie in (0, 1]");
  const int count = static_cast<int>(std::floor(1.0 / step + 1e-9));
  std::vector<double> values;
  for (int i = 0; i <= count; ++i) values.push_back(std::round(i * step * 1e9) / 1e9);
  return values;
}

void SweepConfig::validate() const {
  auto in_unit = [](const std::vector<double>& v, const char* name) {
    if (v.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
    for (double x : v) {
      if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " values must lie in [0, 1]");
      }
    }
  };
  in_unit(tpr_values, "tpr");
  in_unit(rfpr_values, "rfpr");
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in [0, 1]");
  if (n_scenarios < 1) throw std::invalid_argument("n_scenarios must be at least 1");
  for (int k : baselines) {
    if (k < 0) throw std::invalid_argument("baseline k must be non-negative");
  }
  if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  if (budget_seconds < 0.0) throw std::invalid_argument("budget must be non-negative");
}

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

ojson config_to_json(const SweepConfig& c) {
  ojson j;
  j["instance_hash"] = hex(fnv1a(instance_to_json(c.instance).dump()));
  j["tpr_values"] = c.tpr_values;
  j["rfpr_values"] = c.rfpr_values;
  j["rho"] = c.rho;
  j["n_scenarios"] = c.n_scenarios;
  j["baselines"] = c.baselines;
  j["seed"] = c.seed;
  j["truth_mode"] = to_string(c.truth_mode);
  j["solver"] = {{"backend", mip::to_string(c.controls.backend)},
                 {"gap_tolerance", c.controls.gap_tolerance},
                 {"time_limit_seconds", c.controls.time_limit_seconds},
                 {"threads", c.controls.threads}};
  j["reroster"] = {{"keep_reserve_requirement", c.reroster.keep_reserve_requirement},
                   {"absentee_scope", to_string(c.reroster.absentee_scope)},
                   {"change_model",
                    c.reroster.change_model == ChangeModel::kDirect ? "direct" : "auxiliary"}};
  return j;
}

std::string config_fingerprint(const SweepConfig& config) {
  return hex(fnv1a(config_to_json(config).dump()));
}

std::string CellSpec::policy() const { return baseline ? "fixed-" + std::to_string(k) : "ml"; }

namespace {

std::vector<CellSpec> make_cells(const std::vector<double>& tprs, const std::vector<double>& rfprs,
                                 const std::vector<int>& baselines) {
  std::vector<CellSpec> cells;
  for (double t : tprs) {
    for (double r : rfprs) {
      cells.push_back({"ml/tpr=" + fmt(t) + "/rfpr=" + fmt(r), false, t, r, 0});
    }
  }
  for (int k : baselines) cells.push_back({"fixed-" + std::to_string(k), true, 0.0, 0.0, k});
  return cells;
}

// Random inputs of one cell, all derived from the master seed and the cell
// id so that execution order does not matter.
struct CellInputs {
  ReserveRequirement reserve;
  ConfusionTallies tallies;
};

CellInputs cell_inputs(const SweepConfig& c, const CellSpec& cell,
                       const AbsenceScenario& shared_truth) {
  if (cell.baseline) return {baseline_policy(cell.k, c.instance.days), {}};
  const ClassifierProfile profile{cell.tpr, cell.rfpr, c.rho};
  const std::uint64_t key = fnv1a(cell.id);
  PredictionOutcome out =
      c.truth_mode == TruthMode::kShared
          ? predict_for_truth(shared_truth, profile,
                              derive_seed(c.seed, SeedDomain::kClassifier, {key}))
          : simulate_predictions(c.instance.num_employees(), c.instance.days, profile,
                                 derive_seed(c.seed, SeedDomain::kPredictionTruth, {key}));
  return {std::move(out.reserve), out.tallies};
}

std::uint64_t evaluation_seed(const SweepConfig& c, const CellSpec& cell) {
  return c.truth_mode == TruthMode::kShared
             ? c.seed
             : derive_seed(c.seed, SeedDomain::kEvaluation, {fnv1a(cell.id)});
}

std::string scenario_key(const std::string& cell, int scenario) {
  return cell + "#" + std::to_string(scenario);
}

class LogWriter {
 public:
  explicit LogWriter(const fs::path& path) : path_(path), out_(path, std::ios::app) {
    if (!out_) throw std::runtime_error("cannot open log " + path.string());
  }
  void append(const ojson& record) {
    std::lock_guard lock(mutex_);
    out_ << record.dump() << '\n';
    out_.flush();
    if (!out_) throw std::runtime_error("write to " + path_.string() + " failed");
  }

 private:
  fs::path path_;
  std::ofstream out_;
  std::mutex mutex_;
};

// Reads the log, dropping a torn final line left by an interrupted write.
std::vector<json> read_log(const fs::path& path, bool repair) {
  std::vector<json> records;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read log " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < content.size()) {
    const std::size_t end = content.find('\n', start);
    ++line_no;
    if (end == std::string::npos) {
      if (repair) fs::resize_file(path, start);
      break;
    }
    try {
      records.push_back(json::parse(content.substr(start, end - start)));
    } catch (const json::exception&) {
      throw std::runtime_error(path.string() + ": corrupt record on line " +
                               std::to_string(line_no));
    }
    start = end + 1;
  }
  return records;
}

class WorkQueue {
 public:
  void push(std::function<void()> task) {
    {
      std::lock_guard lock(mutex_);
      tasks_.push_back(std::move(task));
    }
    cv_.notify_one();
  }

  // Runs tasks on `workers` threads until the queue is empty and idle.
  // The first exception stops the queue and is rethrown.
  void run(int workers) {
    std::vector<std::thread> threads;
    for (int i = 1; i < workers; ++i) threads.emplace_back([this] { work(); });
    work();
    for (auto& t : threads) t.join();
    if (error_) std::rethrow_exception(error_);
  }

 private:
  void work() {
    while (true) {
      std::function<void()> task;
      {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [this] { return stop_ || !tasks_.empty() || active_ == 0; });
        if (stop_ || tasks_.empty()) {
          cv_.notify_all();
          return;
        }
        task = std::move(tasks_.front());
        tasks_.pop_front();
        ++active_;
      }
      try {
        task();
      } catch (...) {
        std::lock_guard lock(mutex_);
        if (!error_) error_ = std::current_exception();
        stop_ = true;
      }
      {
        std::lock_guard lock(mutex_);
        --active_;
      }
      cv_.notify_all();
    }
  }

  std::mutex mutex_;
  std::condition_variable cv_;
  std::deque<std::function<void()>> tasks_;
  int active_ = 0;
  bool stop_ = false;
  std::exception_ptr error_;
};

ojson tallies_to_json(const ConfusionTallies& t) {
  return {{"tp", t.tp}, {"fp", t.fp}, {"fn", t.fn}, {"tn", t.tn}};
}

ScenarioRecord scenario_from_json(const json& j) {
  ScenarioRecord s;
  s.scenario = j.at("scenario").get<int>();
  s.status = j.at("status").get<std::string>();
  s.solved = j.at("solved").get<bool>();
  s.absences = j.at("absences").get<int>();
  s.solve_s = j.at("solve_s").get<double>();
  if (s.solved) {
    s.cost = j.at("cost").get<double>();
    s.base_cost = j.at("base_cost").get<double>();
    s.change_cost = j.at("change_cost").get<double>();
    s.pct_reserves_converted = j.at("pct_reserves_converted").get<double>();
    s.reserve_conversions = j.at("reserve_conversions").get<int>();
    s.working_shift_changes = j.at("working_shift_changes").get<int>();
    s.dayoff_changes = j.at("dayoff_changes").get<int>();
    s.gap = j.at("gap").get<double>();
  }
  return s;
}

ojson scenario_to_log(const std::string& cell, const ScenarioRecord& s) {
  ojson j;
  j["type"] = "reroster";
  j["cell"] = cell;
  j["scenario"] = s.scenario;
  j["status"] = s.status;
  j["solved"] = s.solved;
  j["absences"] = s.absences;
  j["solve_s"] = s.solve_s;
  if (s.solved) {
    j["cost"] = s.cost;
    j["base_cost"] = s.base_cost;
    j["change_cost"] = s.change_cost;
    j["pct_reserves_converted"] = s.pct_reserves_converted;
    j["reserve_conversions"] = s.reserve_conversions;
    j["working_shift_changes"] = s.working_shift_changes;
    j["dayoff_changes"] = s.dayoff_changes;
    j["gap"] = s.gap;
  }
  return j;
}

// Axes and run parameters recovered from a manifest's config block.
struct SweepShape {
  std::vector<double> tpr_values;
  std::vector<double> rfpr_values;
  std::vector<int> baselines;
  int n_scenarios = 0;
  int days = 0;
};

SweepResult build_result(const SweepShape& shape, const std::vector<json>& records) {
  std::map<std::string, const json*> rosters;
  std::map<std::string, std::map<int, const json*>> scenarios;
  for (const auto& r : records) {
    const auto type = r.at("type").get<std::string>();
    if (type == "roster") {
      rosters.try_emplace(r.at("cell").get<std::string>(), &r);
    } else if (type == "reroster") {
      scenarios[r.at("cell").get<std::string>()].try_emplace(r.at("scenario").get<int>(), &r);
    }
  }
  SweepResult result;
  result.tpr_values = shape.tpr_values;
  result.rfpr_values = shape.rfpr_values;
  result.n_scenarios = shape.n_scenarios;
  for (const auto& spec : make_cells(shape.tpr_values, shape.rfpr_values, shape.baselines)) {
    CellRecord cell;
    cell.spec = spec;
    if (auto it = rosters.find(spec.id); it != rosters.end()) {
      const json& r = *it->second;
      cell.roster_status = r.at("status").get<std::string>();
      cell.roster_solved = r.at("solved").get<bool>();
      cell.roster_solve_s = r.at("solve_s").get<double>();
      const auto& t = r.at("tallies");
      cell.tallies = {t.at("tp").get<long>(), t.at("fp").get<long>(), t.at("fn").get<long>(),
                      t.at("tn").get<long>()};
      const auto reserve = r.at("reserve").get<std::vector<int>>();
      cell.reserves_per_day = shape.days > 0
                                  ? std::accumulate(reserve.begin(), reserve.end(), 0.0) /
                                        shape.days
                                  : 0.0;
      if (cell.roster_solved) {
        cell.rostering_cost = r.at("cost").get<double>();
        cell.roster_gap = r.at("gap").get<double>();
        cell.reserves_per_day =
            static_cast<double>(r.at("scheduled_reserves").get<int>()) / shape.days;
      }
    }
    if (auto it = scenarios.find(spec.id); it != scenarios.end() && cell.roster_solved) {
      for (const auto& [index, rec] : it->second) {
        if (index < shape.n_scenarios) cell.detail.push_back(scenario_from_json(*rec));
      }
    }
    aggregate(cell, shape.n_scenarios);
    if (cell.roster_status == "missing" || cell.n_missing > 0) result.truncated = true;
    result.cells.push_back(std::move(cell));
  }
  return result;
}

SweepShape shape_of(const SweepConfig& c) {
  return {c.tpr_values, c.rfpr_values, c.baselines, c.n_scenarios, c.instance.days};
}

void write_json(const ojson& doc, const fs::path& path) {
  std::ofstream out(path);
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

std::vector<CellSpec> sweep_cells(const SweepConfig& config) {
  return make_cells(config.tpr_values, config.rfpr_values, config.baselines);
}

const CellRecord* SweepResult::find_ml(double tpr, double rfpr) const {
  for (const auto& c : cells) {
    if (!c.spec.baseline && std::abs(c.spec.tpr - tpr) < 1e-9 &&
        std::abs(c.spec.rfpr - rfpr) < 1e-9) {
      return &c;
    }
  }
  return nullptr;
}

const CellRecord* SweepResult::find_baseline(int k) const {
  for (const auto& c : cells) {
    if (c.spec.baseline && c.spec.k == k) return &c;
  }
  return nullptr;
}

void aggregate(CellRecord& cell, int n_scenarios) {
  cell.mean_reroster_cost = cell.pct_reserves_converted = 0.0;
  cell.working_shift_changes = cell.dayoff_changes = 0.0;
  cell.mean_solve_s = cell.max_gap = 0.0;
  cell.n_optimal = cell.n_gap = cell.n_failed = cell.n_missing = 0;
  std::sort(cell.detail.begin(), cell.detail.end(),
            [](const auto& a, const auto& b) { return a.scenario < b.scenario; });
  if (cell.roster_status != "missing" && !cell.roster_solved) {
    cell.n_failed = n_scenarios;
    return;
  }
  int solved = 0;
  for (const auto& s : cell.detail) {
    cell.mean_solve_s += s.solve_s;
    if (!s.solved) {
      ++cell.n_failed;
      continue;
    }
    ++solved;
    ++(s.status == "optimal" ? cell.n_optimal : cell.n_gap);
    cell.mean_reroster_cost += s.cost;
    cell.pct_reserves_converted += s.pct_reserves_converted;
    cell.working_shift_changes += s.working_shift_changes;
    cell.dayoff_changes += s.dayoff_changes;
    cell.max_gap = std::max(cell.max_gap, s.gap);
  }
  cell.n_missing = n_scenarios - static_cast<int>(cell.detail.size());
  if (!cell.detail.empty()) cell.mean_solve_s /= static_cast<double>(cell.detail.size());
  if (solved > 0) {
    cell.mean_reroster_cost /= solved;
    cell.pct_reserves_converted /= solved;
    cell.working_shift_changes /= solved;
    cell.dayoff_changes /= solved;
  }
}

SweepResult run_sweep(const SweepConfig& config, const fs::path& out_dir,
                      const std::function<void(const std::string&)>& progress) {
  config.validate();
  validate(config.instance);
  fs::create_directories(out_dir);
  const fs::path log_path = out_dir / "log.jsonl";
  const std::string fingerprint = config_fingerprint(config);

  std::vector<json> existing;
  if (fs::exists(log_path) && fs::file_size(log_path) > 0) {
    existing = read_log(log_path, true);
    if (existing.empty() || existing.front().value("type", "") != "header" ||
        existing.front().value("fingerprint", "") != fingerprint) {
      throw std::invalid_argument(log_path.string() +
                                  " belongs to a sweep with a different configuration");
    }
  }
  LogWriter log(log_path);
  if (existing.empty()) {
    ojson header{{"type", "header"}, {"fingerprint", fingerprint}};
    log.append(header);
  }

  ojson manifest;
  manifest["tool"] = "rosterlab";
  manifest["version"] = ROSTERLAB_VERSION;
  manifest["highs_version"] = mip::highs_version();
  manifest["status"] = "running";
  manifest["fingerprint"] = fingerprint;
  manifest["seed"] = config.seed;
  manifest["seed_source"] = config.seed_source;
  manifest["instance_source"] = config.instance_source;
  manifest["config"] = config_to_json(config);
  manifest["execution"] = {{"jobs", config.jobs}, {"budget_seconds", config.budget_seconds}};
  manifest["instance"] = instance_to_json(config.instance);
  write_json(manifest, out_dir / "manifest.json");

  std::map<std::string, const json*> done_rosters;
  std::map<std::string, bool> done_scenarios;
  for (const auto& r : existing) {
    const auto type = r.value("type", "");
    if (type == "roster") done_rosters.try_emplace(r.at("cell").get<std::string>(), &r);
    if (type == "reroster") {
      done_scenarios[scenario_key(r.at("cell").get<std::string>(), r.at("scenario").get<int>())] =
          true;
    }
  }

  const ProblemInstance& inst = config.instance;
  const int E = inst.num_employees();
  const int D = inst.days;
  const AbsenceScenario shared_truth =
      simulate_predictions(E, D, {0.0, 0.0, config.rho},
                           derive_seed(config.seed, SeedDomain::kPredictionTruth))
          .scenario;
  std::vector<AbsenceScenario> shared_eval;
  if (config.truth_mode == TruthMode::kShared) {
    shared_eval = generate_scenarios(E, D, config.rho, config.n_scenarios, config.seed);
  }

  std::mutex budget_mutex;
  double spent = 0.0;
  auto over_budget = [&] {
    std::lock_guard lock(budget_mutex);
    return config.budget_seconds > 0.0 && spent >= config.budget_seconds;
  };
  auto charge = [&](double seconds) {
    std::lock_guard lock(budget_mutex);
    spent += seconds;
  };
  auto report = [&](const std::string& line) {
    if (progress) progress(line);
  };

  WorkQueue queue;
  auto enqueue_scenarios = [&](const CellSpec& cell, std::shared_ptr<const Roster> roster) {
    const std::uint64_t eval_seed = evaluation_seed(config, cell);
    for (int i = 0; i < config.n_scenarios; ++i) {
      if (done_scenarios.count(scenario_key(cell.id, i))) continue;
      queue.push([&, cell, roster, eval_seed, i] {
        if (over_budget()) return;
        const AbsenceScenario scenario = config.truth_mode == TruthMode::kShared
                                             ? shared_eval[i]
                                             : generate_scenario(E, D, config.rho, eval_seed, i);
        ScenarioRecord s;
        s.scenario = i;
        s.absences = scenario.total_absences();
        try {
          const RerosterResult r =
              solve_rerostering(inst, *roster, scenario, config.controls, config.reroster);
          s.status = mip::to_string(r.roster.solve.status);
          s.solved = true;
          s.cost = r.costs.total;
          s.base_cost = r.costs.base_cost;
          s.change_cost = r.costs.change_cost;
          s.pct_reserves_converted = r.metrics.pct_reserves_converted;
          s.reserve_conversions = r.metrics.reserve_conversions;
          s.working_shift_changes = r.metrics.working_shift_changes;
          s.dayoff_changes = r.metrics.dayoff_changes;
          s.gap = r.roster.solve.gap;
          s.solve_s = r.roster.solve.wall_time;
        } catch (const SolveError& e) {
          s.status = mip::to_string(e.status());
        } catch (const std::exception& e) {
          s.status = "error";
        }
        charge(s.solve_s);
        log.append(scenario_to_log(cell.id, s));
      });
    }
  };

  for (const auto& cell : sweep_cells(config)) {
    if (auto it = done_rosters.find(cell.id); it != done_rosters.end()) {
      const json& r = *it->second;
      if (r.at("solved").get<bool>()) {
        enqueue_scenarios(cell,
                          std::make_shared<const Roster>(roster_from_json(inst, r.at("roster"))));
      }
      continue;
    }
    queue.push([&, cell] {
      if (over_budget()) return;
      const CellInputs in = cell_inputs(config, cell, shared_truth);
      ojson rec;
      rec["type"] = "roster";
      rec["cell"] = cell.id;
      rec["reserve"] = in.reserve.per_day;
      rec["tallies"] = tallies_to_json(in.tallies);
      std::shared_ptr<const Roster> roster;
      try {
        const Roster solved = solve_rostering(inst, in.reserve, config.controls);
        const ojson roster_doc = roster_to_json(inst, solved);
        // Later stages see the roster exactly as a resumed run would.
        roster = std::make_shared<const Roster>(roster_from_json(inst, json::parse(roster_doc.dump())));
        rec["status"] = mip::to_string(solved.solve.status);
        rec["solved"] = true;
        rec["solve_s"] = solved.solve.wall_time;
        rec["cost"] = roster->costs.total;
        rec["gap"] = solved.solve.gap;
        rec["scheduled_reserves"] = static_cast<int>(roster->reserve_shifts());
        rec["roster"] = roster_doc;
        charge(solved.solve.wall_time);
      } catch (const SolveError& e) {
        rec["status"] = mip::to_string(e.status());
        rec["solved"] = false;
        rec["solve_s"] = 0.0;
        rec["message"] = e.what();
      } catch (const std::exception& e) {
        rec["status"] = "error";
        rec["solved"] = false;
        rec["solve_s"] = 0.0;
        rec["message"] = e.what();
      }
      log.append(rec);
      report(cell.id + " rostering " + rec["status"].get<std::string>());
      if (roster) enqueue_scenarios(cell, roster);
    });
  }
  queue.run(config.jobs);

  SweepResult result = build_result(shape_of(config), read_log(log_path, false));
  manifest["status"] = result.truncated ? "truncated" : "complete";
  manifest["solver_seconds_this_run"] = spent;
  result.manifest = manifest;
  write_json(manifest, out_dir / "manifest.json");
  write_results_csv(result, out_dir / "results.csv");
  write_detail_csv(result, out_dir / "detail.csv");
  return result;
}

SweepResult load_sweep(const fs::path& out_dir) {
  const fs::path manifest_path = out_dir / "manifest.json";
  std::ifstream in(manifest_path);
  if (!in) throw std::runtime_error("cannot read " + manifest_path.string());
  ojson manifest;
  try {
    manifest = ojson::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error(manifest_path.string() + ": " + e.what());
  }
  const auto& c = manifest.at("config");
  SweepShape shape{c.at("tpr_values").get<std::vector<double>>(),
                   c.at("rfpr_values").get<std::vector<double>>(),
                   c.at("baselines").get<std::vector<int>>(), c.at("n_scenarios").get<int>(),
                   manifest.at("instance").at("days").get<int>()};
  SweepResult result = build_result(shape, read_log(out_dir / "log.jsonl", false));
  result.manifest = manifest;
  return result;
}

namespace {

std::string opt(bool present, double v) { return present ? fmt(v) : ""; }

std::ofstream open_csv(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

void write_results_csv(const SweepResult& result, const fs::path& path) {
  auto out = open_csv(path);
  out << "tpr,rfpr,rostering_cost,reserves_per_day,mean_reroster_cost,pct_reserves_converted,"
         "working_shift_changes,dayoff_changes,n_optimal,n_gap,mean_solve_s,policy,n_failed,"
         "n_missing\n";
  for (const auto& c : result.cells) {
    const bool solved = c.n_optimal + c.n_gap > 0;
    out << opt(!c.spec.baseline, c.spec.tpr) << ',' << opt(!c.spec.baseline, c.spec.rfpr) << ','
        << opt(c.roster_solved, c.rostering_cost) << ','
        << opt(c.roster_status != "missing", c.reserves_per_day) << ','
        << opt(solved, c.mean_reroster_cost) << ',' << opt(solved, c.pct_reserves_converted)
        << ',' << opt(solved, c.working_shift_changes) << ',' << opt(solved, c.dayoff_changes)
        << ',' << c.n_optimal << ',' << c.n_gap << ','
        << opt(!c.detail.empty(), c.mean_solve_s) << ',' << c.spec.policy() << ','
        << c.n_failed << ',' << c.n_missing << '\n';
  }
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

void write_detail_csv(const SweepResult& result, const fs::path& path) {
  auto out = open_csv(path);
  out << "policy,tpr,rfpr,scenario,status,absences,reroster_cost,base_cost,change_cost,"
         "pct_reserves_converted,reserve_conversions,working_shift_changes,dayoff_changes,gap,"
         "solve_s\n";
  for (const auto& c : result.cells) {
    for (const auto& s : c.detail) {
      out << c.spec.policy() << ',' << opt(!c.spec.baseline, c.spec.tpr) << ','
          << opt(!c.spec.baseline, c.spec.rfpr) << ',' << s.scenario << ',' << s.status << ','
          << s.absences << ',' << opt(s.solved, s.cost) << ',' << opt(s.solved, s.base_cost)
          << ',' << opt(s.solved, s.change_cost) << ','
          << opt(s.solved, s.pct_reserves_converted) << ',';
      if (s.solved) {
        out << s.reserve_conversions << ',' << s.working_shift_changes << ','
            << s.dayoff_changes;
      } else {
        out << ",,";
      }
      out << ',' << opt(s.solved, s.gap) << ',' << fmt(s.solve_s) << '\n';
    }
  }
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

double cost_ratio(const CellRecord& numerator, const CellRecord& baseline) {
  if (baseline.n_optimal + baseline.n_gap == 0 || baseline.mean_reroster_cost == 0.0) {
    throw std::domain_error("baseline " + baseline.spec.id + " has no positive mean cost");
  }
  return numerator.mean_reroster_cost / baseline.mean_reroster_cost;
}

std::vector<ContourSegment> level_contour(const std::vector<double>& xs,
                                          const std::vector<double>& ys,
                                          const std::vector<std::optional<double>>& values,
                                          double level) {
  const std::size_t nx = xs.size();
  const std::size_t ny = ys.size();
  if (values.size() != nx * ny) throw std::invalid_argument("contour grid size mismatch");
  std::vector<ContourSegment> segments;
  auto at = [&](std::size_t i, std::size_t j) { return values[i * ny + j]; };
  for (std::size_t i = 0; i + 1 < nx; ++i) {
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      // Corners counter-clockwise: (i,j), (i+1,j), (i+1,j+1), (i,j+1).
      const std::optional<double> c[4] = {at(i, j), at(i + 1, j), at(i + 1, j + 1),
                                          at(i, j + 1)};
      if (!c[0] || !c[1] || !c[2] || !c[3]) continue;
      const double px[4] = {xs[i], xs[i + 1], xs[i + 1], xs[i]};
      const double py[4] = {ys[j], ys[j], ys[j + 1], ys[j + 1]};
      bool above[4];
      for (int q = 0; q < 4; ++q) above[q] = *c[q] >= level;
      // Crossing point on edge q, between corners q and q+1.
      auto cross = [&](int q) {
        const int r = (q + 1) % 4;
        const double t = (level - *c[q]) / (*c[r] - *c[q]);
        return std::pair{px[q] + t * (px[r] - px[q]), py[q] + t * (py[r] - py[q])};
      };
      std::vector<int> edges;
      for (int q = 0; q < 4; ++q) {
        if (above[q] != above[(q + 1) % 4]) edges.push_back(q);
      }
      auto add = [&](int a, int b) {
        const auto [x0, y0] = cross(a);
        const auto [x1, y1] = cross(b);
        segments.push_back({x0, y0, x1, y1});
      };
      if (edges.size() == 2) {
        add(edges[0], edges[1]);
      } else if (edges.size() == 4) {
        // Saddle: the centre value decides which diagonal pair is joined.
        const bool centre = (*c[0] + *c[1] + *c[2] + *c[3]) / 4.0 >= level;
        if (centre == above[0]) {
          add(0, 1);  // cut off corner 1
          add(2, 3);  // cut off corner 3
        } else {
          add(3, 0);
          add(1, 2);
        }
      }
    }
  }
  return segments;
}

RatioGrid compare_to_baseline(const SweepResult& sweep, int k) {
  const CellRecord* base = sweep.find_baseline(k);
  if (!base) throw std::invalid_argument("baseline k=" + std::to_string(k) + " not in sweep");
  RatioGrid grid;
  grid.k = k;
  grid.tpr_values = sweep.tpr_values;
  grid.rfpr_values = sweep.rfpr_values;
  std::vector<std::optional<double>> values;
  for (double t : sweep.tpr_values) {
    for (double r : sweep.rfpr_values) {
      RatioCell rc;
      rc.tpr = t;
      rc.rfpr = r;
      rc.baseline_cost = base->mean_reroster_cost;
      const CellRecord* cell = sweep.find_ml(t, r);
      if (cell && cell->n_optimal + cell->n_gap > 0) {
        rc.ml_cost = cell->mean_reroster_cost;
        rc.ratio = cost_ratio(*cell, *base);
      }
      values.push_back(rc.ratio);
      grid.cells.push_back(rc);
    }
  }
  grid.unit_contour = level_contour(grid.tpr_values, grid.rfpr_values, values, 1.0);
  return grid;
}

void write_ratio_csv(const RatioGrid& grid, const fs::path& path) {
  auto out = open_csv(path);
  out << "tpr,rfpr,ml_cost,baseline_cost,ratio\n";
  for (const auto& c : grid.cells) {
    out << fmt(c.tpr) << ',' << fmt(c.rfpr) << ',' << opt(c.ratio.has_value(), c.ml_cost) << ','
        << fmt(c.baseline_cost) << ',' << (c.ratio ? fmt(*c.ratio) : "") << '\n';
  }
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

void write_contour_csv(const RatioGrid& grid, const fs::path& path) {
  auto out = open_csv(path);
  out << "tpr0,rfpr0,tpr1,rfpr1\n";
  for (const auto& s : grid.unit_contour) {
    out << fmt(s.tpr0) << ',' << fmt(s.rfpr0) << ',' << fmt(s.tpr1) << ',' << fmt(s.rfpr1)
        << '\n';
  }
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t q = i; q <= j; ++q) ranks[order[q]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("spearman needs two equally long samples of size >= 2");
  }
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nan("");
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace rosterlab
