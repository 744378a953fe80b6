#include <doctest.h>

#include <fstream>

#include "fixtures.hpp"
#include "rosterlab/core/generator.hpp"
#include "rosterlab/core/instance_io.hpp"

using namespace rosterlab;
using nlohmann::json;

namespace {

json minimal_document() {
  return json::parse(R"({
    "days": 1,
    "skills": ["nurse"],
    "shifts": {"working": ["day"], "reserve": "reserve", "night": 0,
               "forbidden_successions": []},
    "employees": [{"id": "a", "skills": [0], "max_consecutive_work": 5,
                   "max_consecutive_nights": 3, "min_work_days": 0, "max_work_days": 1,
                   "max_reserve_shifts": 1, "wage": 100, "overtime_wage": 150,
                   "reserve_wage": 10, "change_cost_shift": 100, "change_cost_reserve": 10,
                   "change_cost_dayoff": 150}],
    "demand": [{"day": 0, "shift": 0, "skill": 0, "min": 1}],
    "undesired": [],
    "history": [],
    "costs": {"understaff": 500, "reserve_shortfall": 1000}
  })");
}

std::string error_path(const json& doc) {
  try {
    instance_from_json(doc);
  } catch (const InstanceError& e) {
    return e.path();
  }
  return "<accepted>";
}

}  // namespace

TEST_CASE("minimal instance document loads") {
  testing::TempDir dir;
  const auto path = dir.file("minimal.json");
  std::ofstream(path) << minimal_document().dump();
  const auto inst = load_instance(path);
  CHECK(inst.num_employees() == 1);
  CHECK(inst.days == 1);
  CHECK(inst.shifts.reserve_index() == 1);
  CHECK(inst.demand_at(0, 0, 0) == 1);
}

TEST_CASE("schema and semantic violations report the offending field") {
  auto doc = minimal_document();

  SUBCASE("demand keyed on the reserve shift") {
    doc["demand"][0]["shift"] = 1;
    CHECK(error_path(doc) == "demand[0].shift");
  }
  SUBCASE("min work days above max") {
    doc["employees"][0]["min_work_days"] = 2;
    CHECK(error_path(doc) == "employees[0].min_work_days");
  }
  SUBCASE("missing field") {
    doc["employees"][0].erase("wage");
    CHECK(error_path(doc) == "employees[0].wage");
  }
  SUBCASE("wrong type") {
    doc["days"] = "one";
    CHECK(error_path(doc) == "days");
  }
  SUBCASE("succession through the reserve shift") {
    doc["shifts"]["forbidden_successions"] = json::array({json::array({0, 1})});
    CHECK(error_path(doc) == "shifts.forbidden_successions[0]");
  }
  SUBCASE("history on a period day") {
    doc["history"] = json::array({{{"employee", 0}, {"day", 0}, {"shift", 0}}});
    CHECK(error_path(doc) == "history[0].day");
  }
  SUBCASE("two history shifts on one day") {
    doc["history"] = json::array({{{"employee", 0}, {"day", -1}, {"shift", 0}},
                                  {{"employee", 0}, {"day", -1}, {"shift", 1}}});
    CHECK(error_path(doc) == "history[1]");
  }
  SUBCASE("undesired index out of range") {
    doc["undesired"] = json::array({{{"employee", 3}, {"day", 0}, {"shift", 0}}});
    CHECK(error_path(doc) == "undesired[0].employee");
  }
  SUBCASE("empty skill set") {
    doc["employees"][0]["skills"] = json::array();
    CHECK(error_path(doc) == "employees[0].skills");
  }
  SUBCASE("malformed text") {
    testing::TempDir dir;
    std::ofstream(dir.file("bad.json")) << "{ not json";
    CHECK_THROWS_AS(load_instance(dir.file("bad.json")), InstanceError);
  }
}

TEST_CASE("save then load is the identity on a generated instance") {
  GeneratorConfig config;
  config.skill_mode = SkillMode::kHierarchical;
  const auto generated = generate_instance(config, 7).instance;
  testing::TempDir dir;
  save_instance(generated, dir.file("inst.json"));
  const auto loaded = load_instance(dir.file("inst.json"));
  CHECK(loaded == generated);
  CHECK(instance_to_json(loaded).dump() == instance_to_json(generated).dump());
}

TEST_CASE("default uniform generator shape") {
  const auto generated = generate_instance(GeneratorConfig{}, 1);
  const auto& inst = generated.instance;
  CHECK(inst.num_employees() == 35);
  CHECK(inst.days == 28);
  CHECK(inst.num_skills() == 1);
  CHECK(inst.shifts.num_shifts() == 5);
  CHECK(inst.shifts.working == std::vector<std::string>{"early", "day", "late", "night"});
  for (const auto& e : inst.employees) {
    CHECK(e.wage == 100.0);
    CHECK(e.overtime_wage == 150.0);
    CHECK(e.reserve_wage == doctest::Approx(10.0));
    CHECK(e.change_cost_shift == 100.0);
    CHECK(e.change_cost_reserve == doctest::Approx(10.0));
    CHECK(e.change_cost_dayoff == 150.0);
  }
  CHECK(inst.understaff_cost == 500.0);
  CHECK(inst.reserve_shortfall_penalty == 1000.0);
}

TEST_CASE("hierarchical generator qualifications and wages") {
  GeneratorConfig config;
  config.skill_mode = SkillMode::kHierarchical;
  const auto inst = generate_instance(config, 3).instance;
  REQUIRE(inst.num_skills() == 4);
  int heads = 0;
  int trainees = 0;
  for (const auto& e : inst.employees) {
    if (e.wage == 100.0) {
      ++heads;
      CHECK(e.skills == std::vector<int>{0, 1, 2});
    } else if (e.wage == 70.0) {
      CHECK(e.skills == std::vector<int>{1, 2});
    } else if (e.wage == 50.0) {
      CHECK(e.skills == std::vector<int>{2});
    } else {
      ++trainees;
      CHECK(e.wage == 30.0);
      CHECK(e.skills == std::vector<int>{3});
    }
  }
  CHECK(heads == 5);
  CHECK(trainees == 6);
  CHECK(inst.understaff_cost == 500.0);
}

TEST_CASE("generator is deterministic and validates its inputs") {
  GeneratorConfig config;
  CHECK(generate_instance(config, 11).instance == generate_instance(config, 11).instance);
  CHECK_FALSE(generate_instance(config, 11).instance == generate_instance(config, 12).instance);

  config.skill_mode = SkillMode::kHierarchical;
  config.type_counts = {5, 14, 10, 5};
  CHECK_THROWS_AS(generate_instance(config, 1), std::invalid_argument);
}

TEST_CASE("generated employees can always reach their minimum working days") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GeneratorConfig config;
    config.undesired_per_employee = 10;
    const auto inst = generate_instance(config, seed).instance;
    for (int n = 0; n < inst.num_employees(); ++n) {
      CHECK(max_feasible_work_days(inst, n) >= inst.employees[n].min_work_days);
    }
  }
}

TEST_CASE("capacity warning is non-fatal") {
  GeneratorConfig config;
  config.demand_min_per_shift = 9;
  config.demand_max_per_shift = 9;
  const auto generated = generate_instance(config, 1);
  CHECK_FALSE(generated.warnings.empty());
  CHECK(generated.instance.num_employees() == 35);
}

TEST_CASE("max feasible working days honours history and the run limit") {
  auto inst = testing::tiny_instance(1, 7);
  inst.employees[0].max_consecutive_work = 3;
  inst.index();
  // Runs of three separated by a day off: 3 + 3 = 6 over seven days.
  CHECK(max_feasible_work_days(inst, 0) == 6);
  inst.history = {{0, -1, 0}, {0, -2, 0}, {0, -3, 0}};
  inst.index();
  // Day 0 must be off: days 1-3 and 5-7 leave room for 3 + 2.
  CHECK(max_feasible_work_days(inst, 0) == 5);
  inst.undesired = {{0, 2, 0}};
  inst.index();
  CHECK(max_feasible_work_days(inst, 0) == 4);
}

TEST_CASE("reserve requirement validation") {
  const auto inst = testing::tiny_instance(2, 3);
  CHECK_NOTHROW(validate(ReserveRequirement{{0, 1, 2}}, inst));
  CHECK_THROWS_AS(validate(ReserveRequirement{{0, 1}}, inst), InstanceError);
  CHECK_THROWS_AS(validate(ReserveRequirement{{0, 3, 0}}, inst), InstanceError);
}

TEST_CASE("absence scenario derived set") {
  AbsenceScenario scenario(3, 4, 9);
  scenario.set_absent(2, 1);
  scenario.set_absent(2, 3);
  scenario.set_absent(0, 1);
  CHECK(scenario.absent_set() == std::vector<int>{0, 2});
  CHECK(scenario.total_absences() == 3);
  CHECK(scenario.absences_on(1) == 2);
  const auto round = scenario_from_json(json::parse(scenario_to_json(scenario).dump()));
  CHECK(round == scenario);
}
