#include "rosterlab/core/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "rosterlab/util/rng.hpp"

namespace rosterlab {

namespace {

// Shifts in chronological order of their start time; a shift may not be
// followed on the next day by one that starts earlier.
const std::vector<std::string> kWorkingShifts = {"early", "day", "late", "night"};
constexpr int kNightIndex = 3;

const std::array<const char*, 4> kTypeNames = {"head", "nurse", "caretaker", "trainee"};
const std::array<std::vector<int>, 4> kTypeSkills = {
    std::vector<int>{0, 1, 2}, std::vector<int>{1, 2}, std::vector<int>{2}, std::vector<int>{3}};

std::string employee_id(const char* prefix, int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%02d", prefix, index);
  return buf;
}

// Largest-remainder split of `total` proportional to `weights`.
std::vector<int> split_proportional(int total, const std::vector<int>& weights) {
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<int> out(weights.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  int assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = total * weights[i] / sum;
    out[i] = static_cast<int>(std::floor(exact));
    assigned += out[i];
    remainders.emplace_back(exact - out[i], i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t j = 0; assigned < total; ++j, ++assigned) {
    ++out[remainders[j % remainders.size()].second];
  }
  return out;
}

void generate_history(ProblemInstance& inst, int employee, int length, RngStream& rng) {
  const auto& e = inst.employees[employee];
  int run = 0;
  int nights = 0;
  int prev = kOff;
  for (int h = -length; h <= -1; ++h) {
    int shift = kOff;
    if (run < e.max_consecutive_work && rng.bernoulli(0.65)) {
      std::vector<int> options;
      for (int s = 0; s < inst.shifts.num_working(); ++s) {
        if (prev != kOff && inst.shifts.forbidden(prev, s)) continue;
        if (s == inst.shifts.night && nights >= e.max_consecutive_nights) continue;
        options.push_back(s);
      }
      if (!options.empty()) {
        shift = options[rng.uniform_int(0, static_cast<int>(options.size()) - 1)];
      }
    }
    if (shift == kOff) {
      run = 0;
      nights = 0;
    } else {
      ++run;
      nights = shift == inst.shifts.night ? nights + 1 : 0;
      inst.history.push_back({employee, h, shift});
    }
    prev = shift;
  }
}

}  // namespace

SkillMode parse_skill_mode(const std::string& text) {
  if (text == "uniform") return SkillMode::kUniform;
  if (text == "hierarchical") return SkillMode::kHierarchical;
  throw std::invalid_argument("unknown skill mode '" + text + "'");
}

std::string to_string(SkillMode mode) {
  return mode == SkillMode::kUniform ? "uniform" : "hierarchical";
}

void apply_cost_table(ProblemInstance& instance, double reserve_shortfall_penalty) {
  double max_wage = 0.0;
  for (auto& e : instance.employees) {
    e.overtime_wage = 1.5 * e.wage;
    e.reserve_wage = 0.1 * e.wage;
    e.change_cost_shift = e.wage;
    e.change_cost_reserve = 0.1 * e.wage;
    e.change_cost_dayoff = 1.5 * e.wage;
    max_wage = std::max(max_wage, e.wage);
  }
  instance.understaff_cost = 5.0 * max_wage;
  instance.reserve_shortfall_penalty = reserve_shortfall_penalty;
}

GeneratedInstance generate_instance(const GeneratorConfig& config, std::uint64_t seed) {
  if (config.employees < 1 || config.days < 1) {
    throw std::invalid_argument("generator needs at least one employee and one day");
  }
  if (config.demand_min_per_shift < 0 || config.demand_max_per_shift < config.demand_min_per_shift) {
    throw std::invalid_argument("demand band must satisfy 0 <= min <= max");
  }
  const bool hierarchical = config.skill_mode == SkillMode::kHierarchical;
  if (hierarchical) {
    const int sum = std::accumulate(config.type_counts.begin(), config.type_counts.end(), 0);
    if (sum != config.employees) {
      throw std::invalid_argument("type counts sum to " + std::to_string(sum) + ", expected " +
                                  std::to_string(config.employees));
    }
  }

  RngStream rng(derive_seed(seed, SeedDomain::kGenerator));
  GeneratedInstance out;
  ProblemInstance& inst = out.instance;
  inst.days = config.days;
  inst.shifts.working = kWorkingShifts;
  inst.shifts.reserve = "reserve";
  inst.shifts.night = kNightIndex;
  for (int a = 0; a < inst.shifts.num_working(); ++a) {
    for (int b = 0; b < a; ++b) {
      inst.shifts.forbidden_successions.emplace_back(a, b);
    }
  }

  auto base_employee = [&config]() {
    Employee e;
    e.max_consecutive_work = config.max_consecutive_work;
    e.max_consecutive_nights = config.max_consecutive_nights;
    e.min_work_days = config.min_work_days;
    e.max_work_days = config.max_work_days;
    e.max_reserve_shifts = config.max_reserve_shifts;
    return e;
  };

  std::vector<int> type_weights;
  if (hierarchical) {
    inst.skills.assign(kTypeNames.begin(), kTypeNames.end());
    int counter = 0;
    for (int t = 0; t < 4; ++t) {
      for (int i = 0; i < config.type_counts[t]; ++i) {
        Employee e = base_employee();
        e.id = employee_id(kTypeNames[t], counter++);
        e.skills = kTypeSkills[t];
        e.wage = config.wage_table[t];
        inst.employees.push_back(std::move(e));
      }
      type_weights.push_back(config.type_counts[t]);
    }
  } else {
    inst.skills = {"nurse"};
    for (int i = 0; i < config.employees; ++i) {
      Employee e = base_employee();
      e.id = employee_id("nurse", i);
      e.skills = {0};
      e.wage = config.uniform_wage;
      inst.employees.push_back(std::move(e));
    }
  }
  apply_cost_table(inst, config.reserve_shortfall_penalty);

  inst.resize_demand();
  for (int d = 0; d < inst.days; ++d) {
    for (int s = 0; s < inst.shifts.num_working(); ++s) {
      const int total = rng.uniform_int(config.demand_min_per_shift, config.demand_max_per_shift);
      if (hierarchical) {
        const auto parts = split_proportional(total, type_weights);
        for (int k = 0; k < inst.num_skills(); ++k) inst.demand_at(d, s, k) = parts[k];
      } else {
        inst.demand_at(d, s, 0) = total;
      }
    }
  }

  for (int n = 0; n < inst.num_employees(); ++n) {
    generate_history(inst, n, config.history_days, rng);
    for (int i = 0; i < config.undesired_per_employee; ++i) {
      const int d = rng.uniform_int(0, inst.days - 1);
      const int s = rng.uniform_int(0, inst.shifts.num_working() - 1);
      inst.undesired.push_back({n, d, s});
    }
  }
  inst.index();

  // Undertime is a hard constraint: every employee must be able to reach
  // min_work_days. Drop the employee's undesired requests, then history,
  // until that holds.
  for (int n = 0; n < inst.num_employees(); ++n) {
    const int need = inst.employees[n].min_work_days;
    if (max_feasible_work_days(inst, n) >= need) continue;
    std::erase_if(inst.undesired, [n](const auto& u) { return u.employee == n; });
    inst.index();
    if (max_feasible_work_days(inst, n) >= need) continue;
    std::erase_if(inst.history, [n](const auto& h) { return h.employee == n; });
    inst.index();
    if (max_feasible_work_days(inst, n) < need) {
      throw std::invalid_argument("min_work_days of " + std::to_string(need) +
                                  " is unreachable within " + std::to_string(inst.days) + " days");
    }
  }

  // Capacity warnings are informational; understaffing stays a soft penalty.
  long total_demand = std::accumulate(inst.demand.begin(), inst.demand.end(), 0L);
  long capacity = 0;
  for (const auto& e : inst.employees) capacity += e.max_work_days;
  if (total_demand > capacity) {
    out.warnings.push_back("total demand " + std::to_string(total_demand) +
                           " exceeds contractual capacity " + std::to_string(capacity));
  }
  for (int k = 0; k < inst.num_skills(); ++k) {
    long skill_demand = 0;
    for (int d = 0; d < inst.days; ++d) {
      for (int s = 0; s < inst.shifts.num_working(); ++s) skill_demand += inst.demand_at(d, s, k);
    }
    long skill_capacity = 0;
    for (const auto& e : inst.employees) {
      if (e.qualified(k)) skill_capacity += e.max_work_days;
    }
    if (skill_demand > skill_capacity) {
      out.warnings.push_back("demand for skill '" + inst.skills[k] + "' (" +
                             std::to_string(skill_demand) + ") exceeds qualified capacity " +
                             std::to_string(skill_capacity));
    }
  }

  validate(inst);
  return out;
}

}  // namespace rosterlab
