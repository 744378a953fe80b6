#include <doctest.h>

#include "fixtures.hpp"
#include "rosterlab/core/generator.hpp"
#include "rosterlab/reroster/reroster.hpp"
#include "rosterlab/roster/constraints.hpp"
#include "rosterlab/roster/oracle.hpp"

using namespace rosterlab;

namespace {

// Two employees, one day, one shift with demand 1. Employee 0 works, employee
// 1 holds `second` (a shift index or kOff).
struct MicroCase {
  ProblemInstance inst;
  Roster original;
};

MicroCase micro_case(int working_shifts, int second, int employees = 2) {
  MicroCase mc;
  mc.inst = testing::tiny_instance(employees, 1, working_shifts);
  mc.inst.demand_at(0, 0, 0) = 1;
  mc.inst.index();
  AssignmentGrid g(employees, 1);
  g.at(0, 0) = {0, 0};
  if (second != kOff) g.at(1, 0) = {second, 0};
  mc.original = evaluate_roster(mc.inst, g, ReserveRequirement{{0}});
  return mc;
}

AbsenceScenario absent(int employees, int days, std::initializer_list<std::pair<int, int>> cells) {
  AbsenceScenario s(employees, days);
  for (auto [n, d] : cells) s.set_absent(n, d);
  return s;
}

}  // namespace

TEST_CASE("R1: the reserve covers the absence") {
  auto mc = micro_case(1, 1);
  const auto scenario = absent(2, 1, {{0, 0}});
  const auto r = solve_rerostering(mc.inst, mc.original, scenario);
  CHECK(r.costs.total == doctest::Approx(110.0));
  CHECK(r.costs.base_cost == doctest::Approx(100.0));
  CHECK(r.costs.change_cost == doctest::Approx(10.0));
  CHECK(r.metrics.reserve_conversions == 1);
  CHECK(r.metrics.working_shift_changes == 0);
  CHECK(r.metrics.dayoff_changes == 0);
  CHECK(r.metrics.pct_reserves_converted == doctest::Approx(1.0));
  CHECK(r.roster.assignment.at(0, 0).is_off());
  CHECK(r.roster.assignment.at(1, 0) == Assignment{0, 0});
  CHECK(enumerate_rerostering(mc.inst, mc.original, scenario).cost == doctest::Approx(110.0));
}

TEST_CASE("R1 with both employees absent falls back to understaffing") {
  auto mc = micro_case(1, 1);
  const auto scenario = absent(2, 1, {{0, 0}, {1, 0}});
  const auto r = solve_rerostering(mc.inst, mc.original, scenario);
  CHECK(r.costs.total == doctest::Approx(500.0));
  CHECK(r.metrics.reserve_conversions == 0);
  CHECK(enumerate_rerostering(mc.inst, mc.original, scenario).cost == doctest::Approx(500.0));
}

TEST_CASE("keeping the reserve requirement makes conversion pay the shortfall") {
  auto mc = micro_case(1, 1);
  mc.original = evaluate_roster(mc.inst, mc.original.assignment, ReserveRequirement{{1}});
  const auto scenario = absent(2, 1, {{0, 0}});
  const RerosterOptions keep{true};
  const auto r = solve_rerostering(mc.inst, mc.original, scenario, {}, keep);
  // Converting costs 100 + 10 + 1000; keeping the reserve costs 10 + 500.
  CHECK(r.costs.total == doctest::Approx(510.0));
  CHECK(enumerate_rerostering(mc.inst, mc.original, scenario, keep).cost ==
        doctest::Approx(510.0));
  CHECK(solve_rerostering(mc.inst, mc.original, scenario).costs.total == doctest::Approx(110.0));
}

TEST_CASE("calling in an employee with a day off is charged as a day-off change") {
  auto mc = micro_case(1, kOff);
  const auto scenario = absent(2, 1, {{0, 0}});
  const auto r = solve_rerostering(mc.inst, mc.original, scenario);
  CHECK(r.metrics.dayoff_changes == 1);
  CHECK(r.costs.total == doctest::Approx(250.0));
  CHECK(enumerate_rerostering(mc.inst, mc.original, scenario).cost == doctest::Approx(250.0));
}

TEST_CASE("single-repair micro cases are ordered conversion, shift change, day off") {
  const auto scenario = absent(2, 1, {{0, 0}});
  auto conversion = micro_case(2, 2);
  auto shift_change = micro_case(2, 1);
  auto day_off = micro_case(2, kOff);
  const auto a = solve_rerostering(conversion.inst, conversion.original, scenario);
  const auto b = solve_rerostering(shift_change.inst, shift_change.original, scenario);
  const auto c = solve_rerostering(day_off.inst, day_off.original, scenario);
  CHECK(a.metrics.reserve_conversions == 1);
  CHECK(b.metrics.working_shift_changes == 1);
  CHECK(c.metrics.dayoff_changes == 1);
  CHECK(a.costs.total == doctest::Approx(110.0));
  CHECK(b.costs.total == doctest::Approx(200.0));
  CHECK(c.costs.total == doctest::Approx(250.0));
}

TEST_CASE("with both options available the cheaper repair is chosen") {
  SUBCASE("reserve conversion over a day-off call-in") {
    auto mc = micro_case(1, 1, 3);
    const auto scenario = absent(3, 1, {{0, 0}});
    const auto r = solve_rerostering(mc.inst, mc.original, scenario);
    CHECK(r.metrics.reserve_conversions == 1);
    CHECK(r.metrics.dayoff_changes == 0);
    CHECK(r.costs.total == doctest::Approx(110.0));
  }
  SUBCASE("shift change over a day-off call-in") {
    auto mc = micro_case(2, 1, 3);
    const auto scenario = absent(3, 1, {{0, 0}});
    const auto r = solve_rerostering(mc.inst, mc.original, scenario);
    CHECK(r.metrics.working_shift_changes == 1);
    CHECK(r.metrics.dayoff_changes == 0);
    CHECK(r.costs.total == doctest::Approx(200.0));
  }
}

TEST_CASE("change counts follow the per-cell table") {
  auto inst = testing::tiny_instance(1, 1, 2);
  const int res = inst.shifts.reserve_index();
  const AbsenceScenario none(1, 1);
  auto counts = [&](int from, int to) {
    AssignmentGrid a(1, 1), b(1, 1);
    if (from != kOff) a.at(0, 0) = {from, 0};
    if (to != kOff) b.at(0, 0) = {to, 0};
    const auto c = count_changes(inst, a, b, none);
    return std::array<int, 3>{c.shift[0], c.reserve[0], c.dayoff[0]};
  };
  using A = std::array<int, 3>;
  CHECK(counts(kOff, kOff) == A{0, 0, 0});
  CHECK(counts(kOff, res) == A{0, 0, 2});
  CHECK(counts(kOff, 0) == A{0, 0, 1});
  CHECK(counts(res, res) == A{0, 0, 0});
  CHECK(counts(res, 1) == A{0, 1, 0});
  CHECK(counts(0, kOff) == A{0, 0, 1});
  CHECK(counts(0, res) == A{0, 0, 1});
  CHECK(counts(0, 0) == A{0, 0, 0});
  CHECK(counts(0, 1) == A{1, 0, 0});
  CHECK_THROWS_AS(counts(res, kOff), std::invalid_argument);
}

TEST_CASE("solver change variables match recounted changes") {
  RngStream rng(77);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = testing::random_tiny_instance(rng);
    const auto reserve = testing::random_reserve(rng, inst.days);
    const auto oracle = oracle_enumerate(inst, reserve);
    if (!oracle.feasible) continue;
    const auto original = evaluate_roster(inst, oracle.assignment, reserve);
    AbsenceScenario scenario(inst.num_employees(), inst.days);
    for (int n = 0; n < inst.num_employees(); ++n) {
      for (int d = 0; d < inst.days; ++d) scenario.set_absent(n, d, rng.bernoulli(0.2));
    }
    for (auto model : {ChangeModel::kDirect, ChangeModel::kAuxiliary}) {
      RerosterOptions options;
      options.change_model = model;
      const auto rm = build_rerostering_model(inst, original, scenario, options);
      const auto out = mip::solve(rm.model);
      if (!out.has_solution()) continue;
      const auto grid = rm.x.extract(out);
      const auto recount = count_changes(inst, original.assignment, grid, scenario);
      for (int n = 0; n < inst.num_employees(); ++n) {
        for (int d = 0; d < inst.days; ++d) {
          const auto i = recount.index(n, d);
          CHECK(rm.shift_changes[i].valid() == !scenario.absent(n, d));
          if (!rm.shift_changes[i].valid()) continue;
          CHECK(out.value(rm.shift_changes[i]) == doctest::Approx(recount.shift[i]));
          CHECK(out.value(rm.reserve_conversions[i]) == doctest::Approx(recount.reserve[i]));
          CHECK(out.value(rm.dayoff_changes[i]) == doctest::Approx(recount.dayoff[i]));
        }
      }
      ++checked;
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("rerostering matches the enumerator on random tiny instances") {
  RngStream rng(4242);
  int compared = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = testing::random_tiny_instance(rng);
    const auto reserve = testing::random_reserve(rng, inst.days);
    const auto oracle = oracle_enumerate(inst, reserve);
    if (!oracle.feasible) continue;
    const auto original = evaluate_roster(inst, oracle.assignment, reserve);
    AbsenceScenario scenario(inst.num_employees(), inst.days);
    for (int n = 0; n < inst.num_employees(); ++n) {
      for (int d = 0; d < inst.days; ++d) scenario.set_absent(n, d, rng.bernoulli(0.25));
    }
    CAPTURE(trial);
    for (auto scope : {AbsenteeScope::kAbsenceDays, AbsenteeScope::kWholePeriod}) {
      for (auto model : {ChangeModel::kDirect, ChangeModel::kAuxiliary}) {
        RerosterOptions options;
        options.absentee_scope = scope;
        options.change_model = model;
        const auto expected = enumerate_rerostering(inst, original, scenario, options);
        if (!expected.feasible) {
          CHECK_THROWS_AS(solve_rerostering(inst, original, scenario, {}, options), SolveError);
          continue;
        }
        const auto r = solve_rerostering(inst, original, scenario, {}, options);
        CHECK(std::abs(r.costs.total - expected.cost) <= mip::objective_tolerance(expected.cost));
        ++compared;
      }
    }
  }
  CHECK(compared >= 40);
}

TEST_CASE("repairs respect absences, keep unconverted reserves and the hard rules") {
  GeneratorConfig config;
  config.employees = 8;
  config.days = 10;
  config.min_work_days = 5;
  config.max_work_days = 7;
  config.max_reserve_shifts = 2;
  config.demand_min_per_shift = 1;
  config.demand_max_per_shift = 1;
  const auto inst = generate_instance(config, 3).instance;
  const auto original =
      solve_rostering(inst, ReserveRequirement{std::vector<int>(inst.days, 1)});
  RngStream rng(5);
  AbsenceScenario scenario(inst.num_employees(), inst.days);
  for (int i = 0; i < 4; ++i) {
    scenario.set_absent(rng.uniform_int(0, inst.num_employees() - 1),
                        rng.uniform_int(0, inst.days - 1));
  }
  const auto r = solve_rerostering(inst, original, scenario);
  const int res = inst.shifts.reserve_index();
  for (int n = 0; n < inst.num_employees(); ++n) {
    for (int d = 0; d < inst.days; ++d) {
      if (scenario.absent(n, d)) CHECK(r.roster.assignment.at(n, d).is_off());
      if (!scenario.in_absent_set(n) && original.assignment.at(n, d).shift == res) {
        CHECK_FALSE(r.roster.assignment.at(n, d).is_off());
      }
    }
  }
  CHECK(check_hard_constraints(inst, r.roster.assignment).empty());
  CHECK(r.costs.change_cost ==
        doctest::Approx(r.costs.total - r.costs.base_cost));
}

TEST_CASE("without absences the original roster is kept unchanged") {
  GeneratorConfig config;
  config.employees = 8;
  config.days = 10;
  config.min_work_days = 5;
  config.max_work_days = 7;
  config.max_reserve_shifts = 2;
  config.demand_min_per_shift = 1;
  config.demand_max_per_shift = 1;
  const auto inst = generate_instance(config, 4).instance;
  const auto original = solve_rostering(inst, ReserveRequirement{std::vector<int>(inst.days, 1)});
  REQUIRE(original.costs.understaff_cost == 0.0);
  const AbsenceScenario none(inst.num_employees(), inst.days);
  const auto r = solve_rerostering(inst, original, none);
  CHECK(r.costs.change_cost == 0.0);
  CHECK(r.roster.assignment == original.assignment);
  CHECK(r.costs.total == doctest::Approx(original.costs.total));
}

TEST_CASE("scenario dimensions must match") {
  auto mc = micro_case(1, 1);
  CHECK_THROWS_AS(build_rerostering_model(mc.inst, mc.original, AbsenceScenario(3, 1)),
                  InstanceError);
}

TEST_CASE("reroster documents carry changes and metrics") {
  auto mc = micro_case(1, 1);
  const auto r = solve_rerostering(mc.inst, mc.original, absent(2, 1, {{0, 0}}));
  const auto doc = reroster_to_json(mc.inst, r);
  REQUIRE(doc["changes"].size() == 1);
  CHECK(doc["changes"][0]["v3"] == 1);
  CHECK(doc["metrics"]["reserve_conversions"] == 1);
  CHECK(doc["costs"]["reroster_total"].get<double>() == doctest::Approx(110.0));
}

TEST_CASE("absentee scope decides whether an absentee's other days are protected") {
  // Employee 0 is absent on day 0 and holds a reserve on day 1 that nobody
  // needs; employee 1 covers both days.
  auto inst = testing::tiny_instance(2, 2);
  inst.demand_at(0, 0, 0) = 1;
  inst.index();
  AssignmentGrid g(2, 2);
  g.at(0, 0) = {0, 0};
  g.at(0, 1) = {inst.shifts.reserve_index(), 0};
  const auto original = evaluate_roster(inst, g, ReserveRequirement::zeros(2));
  const auto scenario = absent(2, 2, {{0, 0}});

  RerosterOptions options;
  const auto kept = solve_rerostering(inst, original, scenario, {}, options);
  CHECK(inst.shifts.is_reserve(kept.roster.assignment.at(0, 1).shift));
  // Employee 1 is called in on day 0: 100 + 150, plus the kept reserve.
  CHECK(kept.costs.total == doctest::Approx(260.0));

  options.absentee_scope = AbsenteeScope::kWholePeriod;
  const auto dropped = solve_rerostering(inst, original, scenario, {}, options);
  CHECK(dropped.roster.assignment.at(0, 1).is_off());
  CHECK(dropped.costs.total == doctest::Approx(250.0));
}
