#include <doctest.h>

#include "fixtures.hpp"
#include "rosterlab/core/generator.hpp"
#include "rosterlab/roster/constraints.hpp"
#include "rosterlab/roster/oracle.hpp"
#include "rosterlab/roster/rostering_model.hpp"

using namespace rosterlab;

namespace {

ReserveRequirement one_day(int c) { return ReserveRequirement{{c}}; }

int count_rule(const std::vector<Violation>& v, Rule rule) {
  int c = 0;
  for (const auto& x : v) c += x.rule == rule ? 1 : 0;
  return c;
}

GeneratorConfig small_generated() {
  GeneratorConfig config;
  config.employees = 8;
  config.days = 10;
  config.min_work_days = 5;
  config.max_work_days = 7;
  config.max_reserve_shifts = 2;
  config.demand_min_per_shift = 1;
  config.demand_max_per_shift = 1;
  return config;
}

}  // namespace

TEST_CASE("T1: single employee covers the single shift") {
  const auto inst = testing::instance_t1();
  for (auto backend : {mip::Backend::kHighs, mip::Backend::kEnumeration}) {
    mip::SolveControls controls;
    controls.backend = backend;
    const auto roster = solve_rostering(inst, one_day(0), controls);
    CHECK(roster.costs.total == doctest::Approx(100.0));
    CHECK(roster.assignment.at(0, 0) == Assignment{0, 0});
  }
  const auto oracle = oracle_enumerate(inst, one_day(0));
  REQUIRE(oracle.feasible);
  CHECK(oracle.cost == doctest::Approx(100.0));
}

TEST_CASE("T2: one employee works, the other holds the reserve") {
  const auto inst = testing::instance_t2();
  const auto roster = solve_rostering(inst, one_day(1));
  CHECK(roster.costs.total == doctest::Approx(110.0));
  CHECK(roster.reserve_shortfall == std::vector<int>{0});
  CHECK(roster.reserve_shifts() == 1);
  CHECK(roster.working_days(0) + roster.working_days(1) == 1);
  CHECK(oracle_enumerate(inst, one_day(1)).cost == doctest::Approx(110.0));
}

TEST_CASE("T2 with two required reserves") {
  auto inst = testing::instance_t2();
  // Both on reserve and the shift left to slack: 10 + 10 + 500.
  auto roster = solve_rostering(inst, one_day(2));
  CHECK(roster.costs.total == doctest::Approx(520.0));
  CHECK(roster.reserve_shifts() == 2);
  CHECK(oracle_enumerate(inst, one_day(2)).cost == doctest::Approx(520.0));

  // Once understaffing costs more than a missing reserve, one employee works
  // and the second reserve is paid as shortfall.
  inst.understaff_cost = 5000;
  roster = solve_rostering(inst, one_day(2));
  CHECK(roster.costs.total == doctest::Approx(1110.0));
  CHECK(roster.reserve_shortfall == std::vector<int>{1});
  CHECK(roster.costs.shortfall_penalty == doctest::Approx(1000.0));
  CHECK(oracle_enumerate(inst, one_day(2)).cost == doctest::Approx(1110.0));
}

TEST_CASE("T1 with an unqualified employee leaves the demand to slack") {
  auto inst = testing::tiny_instance(1, 1, 1, 2);
  inst.employees[0].skills = {1};
  inst.employees[0].max_work_days = 1;
  inst.demand_at(0, 0, 0) = 1;
  inst.index();
  const auto roster = solve_rostering(inst, one_day(0));
  CHECK(roster.costs.total == doctest::Approx(500.0));
  CHECK(roster.costs.understaff_cost == doctest::Approx(500.0));
  CHECK(roster.assignment.at(0, 0).is_off());
  CHECK(oracle_enumerate(inst, one_day(0)).cost == doctest::Approx(500.0));
}

TEST_CASE("no demand and no reserve requirement gives an empty roster") {
  const auto inst = testing::tiny_instance(3, 4, 2);
  const auto roster = solve_rostering(inst, ReserveRequirement::zeros(4));
  CHECK(roster.costs.total == 0.0);
  for (int n = 0; n < 3; ++n) {
    for (int d = 0; d < 4; ++d) CHECK(roster.assignment.at(n, d).is_off());
  }
}

TEST_CASE("contradicting hard constraints are reported as infeasible") {
  auto inst = testing::instance_t1();
  inst.employees[0].min_work_days = 1;
  inst.undesired = {{0, 0, 0}};
  inst.index();
  CHECK_FALSE(oracle_enumerate(inst, one_day(0)).feasible);
  try {
    solve_rostering(inst, one_day(0));
    FAIL("expected SolveError");
  } catch (const SolveError& e) {
    CHECK(e.status() == mip::SolveStatus::kInfeasible);
  }
}

TEST_CASE("reserve vector length must match the horizon") {
  const auto inst = testing::instance_t1();
  CHECK_THROWS_AS(build_rostering_model(inst, ReserveRequirement{{0, 0}}), InstanceError);
}

TEST_CASE("enumerator refuses instances beyond its guard") {
  const auto inst = testing::tiny_instance(4, 1);
  CHECK_THROWS_AS(oracle_enumerate(inst, ReserveRequirement::zeros(1)), std::invalid_argument);
}

TEST_CASE("model uses the documented variable names") {
  const auto rm = build_rostering_model(testing::instance_t2(), one_day(1));
  CHECK(rm.model.find("x[0,0,0,0]").valid());
  CHECK(rm.model.find("x[1,0,1,0]").valid());
  CHECK(rm.model.find("v5[1]").valid());
  CHECK(rm.model.find("v6[0,0,0]").valid());
  CHECK(rm.model.find("vr[0]").valid());
  CHECK_FALSE(rm.model.find("x[2,0,0,0]").valid());
}

TEST_CASE("solver slacks equal their closed forms") {
  const auto inst = generate_instance(small_generated(), 5).instance;
  const ReserveRequirement reserve{std::vector<int>(inst.days, 1)};
  const auto rm = build_rostering_model(inst, reserve);
  const auto out = mip::solve(rm.model);
  REQUIRE(out.status == mip::SolveStatus::kOptimal);
  const auto roster = evaluate_roster(inst, rm.x.extract(out), reserve);
  for (std::size_t i = 0; i < rm.understaffing.size(); ++i) {
    const double solver = rm.understaffing[i].valid() ? out.value(rm.understaffing[i]) : 0.0;
    CHECK(solver == doctest::Approx(roster.understaffing[i]));
  }
  for (int d = 0; d < inst.days; ++d) {
    CHECK(out.value(rm.shortfall[d]) == doctest::Approx(roster.reserve_shortfall[d]));
  }
  for (int n = 0; n < inst.num_employees(); ++n) {
    CHECK(out.value(rm.overtime[n]) == doctest::Approx(roster.overtime[n]));
  }
  CHECK(roster.costs.total == doctest::Approx(out.objective_value));
}

TEST_CASE("solved rosters satisfy hard rules, the reserve cap and every conversion") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto inst = generate_instance(small_generated(), seed).instance;
    const ReserveRequirement reserve{std::vector<int>(inst.days, 2)};
    const auto roster = solve_rostering(inst, reserve);
    CHECK(check_hard_constraints(inst, roster.assignment).empty());
    CHECK(check_conversion_safety(inst, roster.assignment).empty());
    for (int n = 0; n < inst.num_employees(); ++n) {
      int reserves = 0;
      for (int d = 0; d < inst.days; ++d) {
        reserves += inst.shifts.is_reserve(roster.assignment.at(n, d).shift) ? 1 : 0;
      }
      CHECK(reserves <= inst.employees[n].max_reserve_shifts);
    }
  }
}

TEST_CASE("conversion safety on hand-made rosters") {
  auto inst = testing::tiny_instance(1, 6, 2);
  auto& e = inst.employees[0];
  e.max_consecutive_work = 4;
  e.max_consecutive_nights = 2;
  inst.index();
  const int res = inst.shifts.reserve_index();
  const int night = inst.shifts.night;

  SUBCASE("working days up to the limit then a reserve") {
    AssignmentGrid g(1, 6);
    for (int d = 0; d < 3; ++d) g.at(0, d) = {0, 0};
    g.at(0, 3) = {res, 0};
    CHECK(check_hard_constraints(inst, g).empty());
    CHECK(check_conversion_safety(inst, g).empty());
  }
  SUBCASE("a reserve beyond the working-day limit is already a violation") {
    AssignmentGrid g(1, 6);
    for (int d = 0; d < 4; ++d) g.at(0, d) = {0, 0};
    g.at(0, 4) = {res, 0};
    CHECK(count_rule(check_hard_constraints(inst, g), Rule::kConsecutiveWork) == 1);
  }
  SUBCASE("a reserve after the maximum run of nights is unsafe") {
    AssignmentGrid g(1, 6);
    g.at(0, 0) = {night, 0};
    g.at(0, 1) = {night, 0};
    g.at(0, 2) = {res, 0};
    CHECK(check_hard_constraints(inst, g).empty());
    const auto v = check_conversion_safety(inst, g);
    REQUIRE(v.size() == 1);
    CHECK(v[0].shift == night);
    CHECK(v[0].violation.rule == Rule::kConsecutiveNights);
  }
  SUBCASE("a reserve next to a forbidden succession is unsafe") {
    inst.shifts.forbidden_successions = {{1, 0}};
    inst.index();
    AssignmentGrid g(1, 6);
    g.at(0, 2) = {res, 0};
    g.at(0, 3) = {0, 0};
    CHECK(check_hard_constraints(inst, g).empty());
    const auto v = check_conversion_safety(inst, g);
    REQUIRE(v.size() == 1);
    CHECK(v[0].violation.rule == Rule::kForbiddenSuccession);
  }
  SUBCASE("double assignment after conversion") {
    AssignmentTensor t(1, 6);
    t.at(0, 1) = {{res, 0}, {0, 0}};
    const auto base = check_hard_constraints(inst, t);
    CHECK(count_rule(base, Rule::kOneShiftPerDay) == 1);
    const auto v = check_conversion_safety(inst, t);
    REQUIRE_FALSE(v.empty());
    CHECK(v[0].violation.rule == Rule::kOneShiftPerDay);
  }
}

TEST_CASE("robust model avoids reserves that a conversion would break") {
  auto inst = testing::tiny_instance(1, 3, 1);
  inst.employees[0].max_consecutive_nights = 2;
  inst.demand_at(0, 0, 0) = 1;
  inst.demand_at(1, 0, 0) = 1;
  inst.index();
  const ReserveRequirement reserve{{0, 0, 1}};
  const auto robust = solve_rostering(inst, reserve);
  CHECK(check_conversion_safety(inst, robust.assignment).empty());
  CHECK(robust.costs.total == doctest::Approx(610.0));
  const auto plain = solve_rostering(inst, reserve, {}, RosteringOptions{false});
  CHECK(plain.costs.total == doctest::Approx(210.0));
  CHECK_FALSE(check_conversion_safety(inst, plain.assignment).empty());
  CHECK(oracle_enumerate(inst, reserve).cost == doctest::Approx(610.0));
}

TEST_CASE("history constrains the first days of the period") {
  auto inst = testing::tiny_instance(1, 2, 2);
  inst.employees[0].max_consecutive_work = 2;
  inst.shifts.forbidden_successions = {{1, 0}};
  inst.history = {{0, -1, 1}, {0, -2, 1}};
  inst.demand_at(0, 0, 0) = 1;
  inst.demand_at(1, 0, 0) = 1;
  inst.index();
  const auto roster = solve_rostering(inst, ReserveRequirement::zeros(2));
  CHECK(roster.assignment.at(0, 0).is_off());
  CHECK(roster.assignment.at(0, 1) == Assignment{0, 0});
  CHECK(roster.costs.total == doctest::Approx(600.0));
  CHECK(oracle_enumerate(inst, ReserveRequirement::zeros(2)).cost == doctest::Approx(600.0));
}

TEST_CASE("rostering matches the enumerator on random tiny instances") {
  RngStream rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const auto inst = testing::random_tiny_instance(rng);
    const auto reserve = testing::random_reserve(rng, inst.days);
    CAPTURE(trial);
    const auto oracle = oracle_enumerate(inst, reserve);
    if (!oracle.feasible) {
      CHECK_THROWS_AS(solve_rostering(inst, reserve), SolveError);
      continue;
    }
    const auto roster = solve_rostering(inst, reserve);
    CHECK(std::abs(roster.costs.total - oracle.cost) <= mip::objective_tolerance(oracle.cost));
    CHECK(evaluate_roster(inst, oracle.assignment, reserve).costs.total ==
          doctest::Approx(oracle.cost));
    CHECK(check_conversion_safety(inst, roster.assignment).empty());
  }
}

TEST_CASE("rostering cost does not decrease as the reserve requirement grows") {
  const auto inst = generate_instance(small_generated(), 9).instance;
  double previous = -1.0;
  for (int c = 0; c <= 3; ++c) {
    const auto roster = solve_rostering(inst, ReserveRequirement{std::vector<int>(inst.days, c)});
    CHECK(roster.costs.total >= previous - mip::objective_tolerance(previous));
    previous = roster.costs.total;
  }
}

TEST_CASE("roster documents round trip") {
  const auto inst = testing::instance_t2();
  const auto roster = solve_rostering(inst, one_day(1));
  const auto doc = roster_to_json(inst, roster);
  CHECK(doc.contains("assignments"));
  CHECK(doc.contains("costs"));
  CHECK(doc.contains("slacks"));
  const auto back = roster_from_json(inst, nlohmann::json::parse(doc.dump()));
  CHECK(back.assignment == roster.assignment);
  CHECK(back.costs.total == doctest::Approx(roster.costs.total));
  CHECK(roster_to_json(inst, back).dump() == doc.dump());
}
