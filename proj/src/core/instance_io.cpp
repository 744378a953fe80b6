#include "rosterlab/core/instance_io.hpp"

#include <fstream>
#include <set>
#include <tuple>

namespace rosterlab {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) {
    throw InstanceError(path, "expected an object");
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw InstanceError(path + "." + key, "missing field");
  }
  return *it;
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) {
    throw InstanceError(path, "expected an integer");
  }
  return v.get<int>();
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) {
    throw InstanceError(path, "expected a number");
  }
  return v.get<double>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) {
    throw InstanceError(path, "expected a string");
  }
  return v.get<std::string>();
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) {
    throw InstanceError(path, "expected an array");
  }
  return v;
}

std::string idx(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

int int_field(const json& obj, const char* key, const std::string& path) {
  return as_int(field(obj, key, path), path + "." + key);
}

double number_field(const json& obj, const char* key, const std::string& path) {
  return as_number(field(obj, key, path), path + "." + key);
}

Employee employee_from_json(const json& e, const std::string& path) {
  Employee out;
  out.id = as_string(field(e, "id", path), path + ".id");
  const auto& skills = as_array(field(e, "skills", path), path + ".skills");
  for (std::size_t i = 0; i < skills.size(); ++i) {
    out.skills.push_back(as_int(skills[i], idx(path + ".skills", i)));
  }
  out.max_consecutive_work = int_field(e, "max_consecutive_work", path);
  out.max_consecutive_nights = int_field(e, "max_consecutive_nights", path);
  out.min_work_days = int_field(e, "min_work_days", path);
  out.max_work_days = int_field(e, "max_work_days", path);
  out.max_reserve_shifts = int_field(e, "max_reserve_shifts", path);
  out.wage = number_field(e, "wage", path);
  out.overtime_wage = number_field(e, "overtime_wage", path);
  out.reserve_wage = number_field(e, "reserve_wage", path);
  out.change_cost_shift = number_field(e, "change_cost_shift", path);
  out.change_cost_reserve = number_field(e, "change_cost_reserve", path);
  out.change_cost_dayoff = number_field(e, "change_cost_dayoff", path);
  return out;
}

}  // namespace

ProblemInstance instance_from_json(const json& doc) {
  const std::string root = "$";
  if (!doc.is_object()) {
    throw InstanceError(root, "instance document must be an object");
  }
  ProblemInstance inst;
  inst.days = as_int(field(doc, "days", root), "days");

  const auto& skills = as_array(field(doc, "skills", root), "skills");
  for (std::size_t i = 0; i < skills.size(); ++i) {
    inst.skills.push_back(as_string(skills[i], idx("skills", i)));
  }

  const auto& shifts = field(doc, "shifts", root);
  const auto& working = as_array(field(shifts, "working", "shifts"), "shifts.working");
  for (std::size_t i = 0; i < working.size(); ++i) {
    inst.shifts.working.push_back(as_string(working[i], idx("shifts.working", i)));
  }
  inst.shifts.reserve = as_string(field(shifts, "reserve", "shifts"), "shifts.reserve");
  inst.shifts.night = as_int(field(shifts, "night", "shifts"), "shifts.night");
  const auto& succ = as_array(field(shifts, "forbidden_successions", "shifts"),
                              "shifts.forbidden_successions");
  for (std::size_t i = 0; i < succ.size(); ++i) {
    const auto path = idx("shifts.forbidden_successions", i);
    const auto& pair = as_array(succ[i], path);
    if (pair.size() != 2) {
      throw InstanceError(path, "expected a pair of shift indices");
    }
    inst.shifts.forbidden_successions.emplace_back(as_int(pair[0], path + "[0]"),
                                                   as_int(pair[1], path + "[1]"));
  }

  const auto& employees = as_array(field(doc, "employees", root), "employees");
  for (std::size_t i = 0; i < employees.size(); ++i) {
    inst.employees.push_back(employee_from_json(employees[i], idx("employees", i)));
  }

  // The dense demand table needs valid dimensions before it can be filled.
  if (inst.days < 1) throw InstanceError("days", "must be at least 1");
  if (inst.skills.empty()) throw InstanceError("skills", "at least one skill is required");
  if (inst.shifts.working.empty()) {
    throw InstanceError("shifts.working", "at least one working shift is required");
  }
  inst.resize_demand();
  std::set<std::tuple<int, int, int>> seen;
  const auto& demand = as_array(field(doc, "demand", root), "demand");
  for (std::size_t i = 0; i < demand.size(); ++i) {
    const auto path = idx("demand", i);
    const int d = int_field(demand[i], "day", path);
    const int s = int_field(demand[i], "shift", path);
    const int k = int_field(demand[i], "skill", path);
    const int m = int_field(demand[i], "min", path);
    if (d < 0 || d >= inst.days) throw InstanceError(path + ".day", "out of range");
    if (s == inst.shifts.reserve_index()) {
      throw InstanceError(path + ".shift", "demand may not reference the reserve shift");
    }
    if (!inst.shifts.is_working(s)) throw InstanceError(path + ".shift", "out of range");
    if (k < 0 || k >= inst.num_skills()) throw InstanceError(path + ".skill", "out of range");
    if (m < 0) throw InstanceError(path + ".min", "must be non-negative");
    if (!seen.emplace(d, s, k).second) throw InstanceError(path, "duplicate demand entry");
    inst.demand_at(d, s, k) = m;
  }

  const auto& undesired = as_array(field(doc, "undesired", root), "undesired");
  for (std::size_t i = 0; i < undesired.size(); ++i) {
    const auto path = idx("undesired", i);
    inst.undesired.push_back({int_field(undesired[i], "employee", path),
                              int_field(undesired[i], "day", path),
                              int_field(undesired[i], "shift", path)});
  }
  const auto& history = as_array(field(doc, "history", root), "history");
  for (std::size_t i = 0; i < history.size(); ++i) {
    const auto path = idx("history", i);
    inst.history.push_back({int_field(history[i], "employee", path),
                            int_field(history[i], "day", path),
                            int_field(history[i], "shift", path)});
  }

  const auto& costs = field(doc, "costs", root);
  inst.understaff_cost = number_field(costs, "understaff", "costs");
  inst.reserve_shortfall_penalty = number_field(costs, "reserve_shortfall", "costs");

  validate(inst);
  inst.index();
  return inst;
}

ordered_json instance_to_json(const ProblemInstance& inst) {
  ordered_json doc;
  doc["days"] = inst.days;
  doc["skills"] = inst.skills;
  ordered_json shifts;
  shifts["working"] = inst.shifts.working;
  shifts["reserve"] = inst.shifts.reserve;
  shifts["night"] = inst.shifts.night;
  shifts["forbidden_successions"] = ordered_json::array();
  for (const auto& [a, b] : inst.shifts.forbidden_successions) {
    shifts["forbidden_successions"].push_back({a, b});
  }
  doc["shifts"] = shifts;

  doc["employees"] = ordered_json::array();
  for (const auto& e : inst.employees) {
    ordered_json j;
    j["id"] = e.id;
    j["skills"] = e.skills;
    j["max_consecutive_work"] = e.max_consecutive_work;
    j["max_consecutive_nights"] = e.max_consecutive_nights;
    j["min_work_days"] = e.min_work_days;
    j["max_work_days"] = e.max_work_days;
    j["max_reserve_shifts"] = e.max_reserve_shifts;
    j["wage"] = e.wage;
    j["overtime_wage"] = e.overtime_wage;
    j["reserve_wage"] = e.reserve_wage;
    j["change_cost_shift"] = e.change_cost_shift;
    j["change_cost_reserve"] = e.change_cost_reserve;
    j["change_cost_dayoff"] = e.change_cost_dayoff;
    doc["employees"].push_back(std::move(j));
  }

  doc["demand"] = ordered_json::array();
  for (int d = 0; d < inst.days; ++d) {
    for (int s = 0; s < inst.shifts.num_working(); ++s) {
      for (int k = 0; k < inst.num_skills(); ++k) {
        if (const int m = inst.demand_at(d, s, k); m > 0) {
          doc["demand"].push_back({{"day", d}, {"shift", s}, {"skill", k}, {"min", m}});
        }
      }
    }
  }
  doc["undesired"] = ordered_json::array();
  for (const auto& u : inst.undesired) {
    doc["undesired"].push_back({{"employee", u.employee}, {"day", u.day}, {"shift", u.shift}});
  }
  doc["history"] = ordered_json::array();
  for (const auto& h : inst.history) {
    doc["history"].push_back({{"employee", h.employee}, {"day", h.day}, {"shift", h.shift}});
  }
  doc["costs"] = {{"understaff", inst.understaff_cost},
                  {"reserve_shortfall", inst.reserve_shortfall_penalty}};
  return doc;
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open instance file " + path.string());
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InstanceError("$", std::string("malformed document: ") + e.what());
  }
  return instance_from_json(doc);
}

void save_instance(const ProblemInstance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write instance file " + path.string());
  }
  out << instance_to_json(instance).dump(2) << '\n';
}

ordered_json reserve_to_json(const ReserveRequirement& reserve) {
  return ordered_json(reserve.per_day);
}

ReserveRequirement reserve_from_json(const json& doc) {
  const auto& arr = as_array(doc, "reserve");
  ReserveRequirement out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.per_day.push_back(as_int(arr[i], idx("reserve", i)));
  }
  return out;
}

ordered_json scenario_to_json(const AbsenceScenario& scenario) {
  ordered_json doc;
  doc["employees"] = scenario.num_employees();
  doc["days"] = scenario.num_days();
  doc["seed"] = scenario.seed();
  doc["absent"] = ordered_json::array();
  for (int n = 0; n < scenario.num_employees(); ++n) {
    for (int d = 0; d < scenario.num_days(); ++d) {
      if (scenario.absent(n, d)) {
        doc["absent"].push_back({n, d});
      }
    }
  }
  return doc;
}

AbsenceScenario scenario_from_json(const json& doc) {
  const std::string root = "scenario";
  const int employees = int_field(doc, "employees", root);
  const int days = int_field(doc, "days", root);
  const auto& seed = field(doc, "seed", root);
  if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
    throw InstanceError(root + ".seed", "expected an integer");
  }
  AbsenceScenario out(employees, days, seed.get<std::uint64_t>());
  const auto& absent = as_array(field(doc, "absent", root), root + ".absent");
  for (std::size_t i = 0; i < absent.size(); ++i) {
    const auto path = idx(root + ".absent", i);
    const auto& pair = as_array(absent[i], path);
    if (pair.size() != 2) throw InstanceError(path, "expected [employee, day]");
    const int n = as_int(pair[0], path + "[0]");
    const int d = as_int(pair[1], path + "[1]");
    if (n < 0 || n >= employees || d < 0 || d >= days) {
      throw InstanceError(path, "out of range");
    }
    out.set_absent(n, d);
  }
  return out;
}

}  // namespace rosterlab
