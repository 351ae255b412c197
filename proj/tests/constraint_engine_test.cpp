#include <gtest/gtest.h>

#include <random>

#include "nurse_roster/constraints.hpp"
#include "support/brute_force_oracle.hpp"
#include "support/generators.hpp"

namespace nrp {
namespace {

/// One nurse holding both skills, two weeks, the standard shift catalog.
InstanceSpec single_nurse_spec(int days = 14) {
  InstanceSpec spec;
  spec.name = "fixture";
  spec.horizon_days = days;
  spec.shifts = standard_shift_catalog();
  Nurse n;
  n.id = 0;
  n.name = "solo";
  n.skills = {"nurse", "head_nurse"};
  spec.nurses.push_back(n);
  return spec;
}

Schedule roster(const RosterInstance& instance, std::initializer_list<std::pair<int, const char*>> cells) {
  Schedule schedule = empty_schedule(instance);
  for (auto [day, shift] : cells) set_assignment(schedule, instance, 0, static_cast<std::size_t>(day), shift);
  return schedule;
}

std::int64_t weighted(const PenaltyBreakdown& b, SoftConstraint id) { return b.weighted[static_cast<std::size_t>(id)]; }

TEST(CheckHard, ThreeNightsAndBlankDays) {
  const RosterInstance instance = reference_instance();
  Schedule schedule = empty_schedule(instance);
  for (std::size_t d : {3u, 4u, 5u}) set_assignment(schedule, instance, 0, d, "N");
  const HardViolationReport report = check_hard(schedule, instance);
  EXPECT_EQ(report.three_consecutive_nights, 1);
  EXPECT_EQ(report.blank_limit_days, 28);
  EXPECT_EQ(report.skill_mismatches, 0);
  EXPECT_EQ(report.double_assignments, 0);
  EXPECT_FALSE(report.feasible());
}

TEST(CheckHard, EmptyScheduleIsInfeasibleOnlyThroughBlanks) {
  const RosterInstance instance = reference_instance();
  const HardViolationReport report = check_hard(empty_schedule(instance), instance);
  EXPECT_EQ(report.three_consecutive_nights, 0);
  EXPECT_EQ(report.skill_mismatches, 0);
  EXPECT_EQ(report.blank_limit_days, 28);
  EXPECT_FALSE(report.feasible());
}

TEST(CheckHard, HeadNurseShiftNeedsTheSkill) {
  const RosterInstance instance = reference_instance();
  ASSERT_FALSE(instance.spec().nurses[5].skills.contains("head_nurse"));
  Schedule schedule = empty_schedule(instance);
  set_assignment(schedule, instance, 5, 0, "DH");
  EXPECT_EQ(check_hard(schedule, instance).skill_mismatches, 1);
  set_assignment(schedule, instance, 0, 1, "DH");  // nurse 0 is a head nurse
  EXPECT_EQ(check_hard(schedule, instance).skill_mismatches, 1);
}

TEST(CheckHard, FourNightsAreTwoWindows) {
  const RosterInstance instance(single_nurse_spec());
  EXPECT_EQ(check_hard(roster(instance, {{0, "N"}, {1, "N"}, {2, "N"}, {3, "N"}}), instance).three_consecutive_nights, 2);
}

TEST(SoftPenalty, LateThenEarlyBreaksMinimumRest) {
  const RosterInstance instance(single_nurse_spec());
  ASSERT_EQ(instance.rest_minutes(*instance.shift_index("L"), *instance.shift_index("V")), 8 * 60);
  EXPECT_EQ(soft_penalty(roster(instance, {{2, "L"}, {3, "V"}}), instance, SoftConstraint::min_time_between_shifts), 1);
}

TEST(SoftPenalty, HalfWorkedWeekend) {
  InstanceSpec spec = single_nurse_spec(2);
  spec.weekend_days = {0, 1};
  const RosterInstance instance(spec);
  EXPECT_EQ(soft_penalty(roster(instance, {{0, "V"}}), instance, SoftConstraint::complete_weekends), 1);
  EXPECT_EQ(soft_penalty(roster(instance, {{0, "V"}, {1, "V"}}), instance, SoftConstraint::complete_weekends), 0);
}

TEST(SoftPenalty, EmptyScheduleTriggersNoAssignmentDrivenConstraint) {
  const RosterInstance instance = reference_instance();
  const Schedule schedule = empty_schedule(instance);
  for (int sc : {2, 4, 6, 8, 9, 11, 12, 15, 17, 18, 20, 21}) {
    EXPECT_EQ(soft_penalty(schedule, instance, soft_constraint_from_number(sc)), 0) << "SC" << sc;
  }
}

TEST(SoftPenalty, UnknownIdentifiers) {
  EXPECT_THROW(soft_constraint_from_label("SC22"), std::invalid_argument);
  EXPECT_THROW(soft_constraint_from_label("HC1"), std::invalid_argument);
  EXPECT_THROW(soft_constraint_from_number(0), std::out_of_range);
  const RosterInstance instance = reference_instance();
  EXPECT_THROW(soft_penalty(empty_schedule(instance), instance, static_cast<SoftConstraint>(21)), std::out_of_range);
  EXPECT_EQ(soft_constraint_from_label("SC15"), SoftConstraint::min_time_between_shifts);
}

TEST(SoftPenalty, ExcessHoursAreCountedPerStartedHour) {
  InstanceSpec spec = single_nurse_spec();
  spec.nurses[0].max_minutes = 7 * 60 + 1;
  const RosterInstance instance(spec);
  // One V shift is 8h: 59 minutes over -> one started hour.
  EXPECT_EQ(soft_penalty(roster(instance, {{0, "V"}}), instance, SoftConstraint::max_hours_worked), 1);
}

TEST(Evaluate, SingleRestViolationCostsItsWeight) {
  InstanceSpec spec = single_nurse_spec();
  spec.constraints.forbidden_successions.erase({"L", "V"});  // isolate SC15 from SC11
  const RosterInstance instance(spec);
  const PenaltyBreakdown b = evaluate(roster(instance, {{2, "L"}, {3, "V"}}), instance);
  EXPECT_EQ(b.violation(SoftConstraint::min_time_between_shifts), 1);
  EXPECT_EQ(b.total, 20);
  EXPECT_EQ(b.fitness, 20);
  EXPECT_TRUE(b.hard.feasible());
}

TEST(Evaluate, IncompleteWeekendCostsForty) {
  const RosterInstance instance(single_nurse_spec());
  const PenaltyBreakdown b = evaluate(roster(instance, {{3, "V"}, {4, "V"}, {5, "V"}}), instance);
  EXPECT_EQ(weighted(b, SoftConstraint::complete_weekends), 40);
  EXPECT_EQ(b.total, 40);
}

TEST(Evaluate, ForbiddenSuccessionCostsTen) {
  InstanceSpec spec = single_nurse_spec();
  spec.constraints.limits.min_rest_minutes = 60;  // isolate SC11 from SC15
  const RosterInstance instance(spec);
  const PenaltyBreakdown b = evaluate(roster(instance, {{2, "N"}, {3, "D"}}), instance);
  EXPECT_EQ(b.violation(SoftConstraint::shift_type_successions), 1);
  EXPECT_EQ(b.total, 10);
}

TEST(Evaluate, AnotherIsolatedRestViolationAddsExactlyOneWeight) {
  InstanceSpec spec = single_nurse_spec();
  spec.constraints.forbidden_successions.erase({"L", "V"});
  const RosterInstance instance(spec);
  const PenaltyBreakdown one = evaluate(roster(instance, {{2, "L"}, {3, "V"}}), instance);
  const PenaltyBreakdown two = evaluate(roster(instance, {{2, "L"}, {3, "V"}, {9, "L"}, {10, "V"}}), instance);
  EXPECT_EQ(two.violation(SoftConstraint::min_time_between_shifts), one.violation(SoftConstraint::min_time_between_shifts) + 1);
  EXPECT_EQ(two.total, one.total + 20);
}

TEST(Evaluate, SubstituteSkillCountsInsteadOfHardViolation) {
  InstanceSpec spec = single_nurse_spec();
  spec.nurses[0].skills = {"nurse"};
  spec.nurses.push_back({1, "head", {"head_nurse"}});
  spec.constraints.alternative_skills = {{"head_nurse", "nurse"}};
  const RosterInstance instance(spec);
  Schedule schedule = empty_schedule(instance);
  set_assignment(schedule, instance, 0, 0, "DH");
  const PenaltyBreakdown b = evaluate(schedule, instance);
  EXPECT_EQ(b.hard.skill_mismatches, 0);
  EXPECT_EQ(b.violation(SoftConstraint::skilled_shifts), 1);
  EXPECT_EQ(b.violation(SoftConstraint::alternative_skill), 1);
}

TEST(Evaluate, HardViolationsDominateFitness) {
  const RosterInstance instance = reference_instance();
  const PenaltyBreakdown b = evaluate(empty_schedule(instance), instance);
  EXPECT_EQ(b.hard_penalty, 28 * kHardViolationPenalty);
  EXPECT_EQ(b.fitness, b.total + b.hard_penalty);
}

TEST(Evaluate, DimensionMismatchIsRejected) {
  const RosterInstance instance = reference_instance();
  EXPECT_THROW(evaluate(Schedule(13, 27), instance), InstanceError);
  EXPECT_THROW(check_hard(Schedule(12, 28), instance), InstanceError);
}

TEST(EvaluateProperties, WeightsAreLinear) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const RosterInstance instance = testing::random_instance(rng, {5, 21, 4});
    InstanceSpec doubled = instance.spec();
    for (auto& w : doubled.constraints.weights) w *= 2;
    const RosterInstance heavier(doubled);
    const Schedule schedule = testing::random_schedule(rng, instance);
    const auto a = evaluate(schedule, instance);
    const auto b = evaluate(schedule, heavier);
    ASSERT_EQ(b.total, 2 * a.total);
    ASSERT_EQ(b.violations, a.violations);
  }
}

TEST(EvaluateProperties, ZeroWeightConstraintsAreReportedButFree) {
  const RosterInstance instance = reference_instance();
  std::mt19937_64 rng(5);
  std::int64_t reported = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto b = evaluate(testing::random_schedule(rng, instance, 0.5), instance);
    for (int sc : {1, 5, 7, 10, 16}) {
      const auto k = static_cast<std::size_t>(sc - 1);
      ASSERT_EQ(b.weighted[k], 0);
      reported += b.violations[k];
    }
  }
  EXPECT_GT(reported, 0);
}

TEST(EvaluateProperties, PureAndConsistentWithSinglePenalties) {
  const RosterInstance instance = reference_instance();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Schedule schedule = testing::random_schedule(rng, instance);
    const auto first = evaluate(schedule, instance);
    EXPECT_EQ(first, evaluate(schedule, instance));
    for (std::size_t k = 0; k < kSoftConstraintCount; ++k) {
      EXPECT_EQ(first.violations[k], soft_penalty(schedule, instance, static_cast<SoftConstraint>(k)));
    }
  }
}

void expect_matches_oracle(const Schedule& schedule, const RosterInstance& instance) {
  const auto expected = testing::brute_force_evaluate(schedule, instance.spec());
  const auto actual = evaluate(schedule, instance);
  for (std::size_t k = 0; k < kSoftConstraintCount; ++k) {
    ASSERT_EQ(actual.violations[k], expected.soft[k]) << "SC" << k + 1 << "\n" << serialize_instance(instance);
  }
  ASSERT_EQ(actual.hard.three_consecutive_nights, expected.hc1);
  ASSERT_EQ(actual.hard.blank_limit_days, expected.hc3);
  ASSERT_EQ(actual.hard.skill_mismatches, expected.hc4);
  ASSERT_EQ(actual.total, expected.soft_total);
  ASSERT_EQ(actual.fitness, expected.fitness);
}

TEST(EvaluateOracle, SmallInstances) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const RosterInstance instance = testing::random_instance(rng);
    for (int s = 0; s < 3; ++s) expect_matches_oracle(testing::random_schedule(rng, instance), instance);
  }
}

TEST(EvaluateOracle, MultiWeekInstances) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    const RosterInstance instance = testing::random_instance(rng, {5, 60, 4});
    expect_matches_oracle(testing::random_schedule(rng, instance, 0.35), instance);
  }
  const RosterInstance reference = reference_instance();
  for (int trial = 0; trial < 50; ++trial) expect_matches_oracle(testing::random_schedule(rng, reference), reference);
}

}  // namespace
}  // namespace nrp
