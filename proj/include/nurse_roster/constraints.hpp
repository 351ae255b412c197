#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "nurse_roster/roster.hpp"

namespace nrp {

/// Soft constraints SC1..SC21 in table order.
enum class SoftConstraint : std::uint8_t {
  max_consecutive_free_days = 0,   // SC1
  max_hours_worked,                // SC2
  complete_weekends,               // SC3
  max_shift_types,                 // SC4
  requested_shifts_on,             // SC5
  max_consecutive_same_shift,      // SC6
  requested_shifts_off,            // SC7
  max_consecutive_working_days,    // SC8
  max_shift_types_per_week,        // SC9
  requested_days_off,              // SC10
  shift_type_successions,          // SC11
  max_shifts_per_weekday,          // SC12
  skilled_shifts,                  // SC13
  alternative_skill,               // SC14
  min_time_between_shifts,         // SC15
  night_before_free_weekend,       // SC16
  max_working_bank_holidays,       // SC17
  max_number_of_shifts,            // SC18
  min_consecutive_free_days,       // SC19
  max_working_weekends,            // SC20
  min_consecutive_working_days,    // SC21
};

/// 1-based table number -> enumerator. Throws std::out_of_range for anything outside 1..21.
SoftConstraint soft_constraint_from_number(int number);
/// "SC1".."SC21" -> enumerator. Throws std::invalid_argument.
SoftConstraint soft_constraint_from_label(std::string_view label);
std::string soft_constraint_label(SoftConstraint id);
std::string_view soft_constraint_name(SoftConstraint id);

inline constexpr std::int64_t kHardViolationPenalty = 1'000'000;

struct HardViolationReport {
  std::int64_t three_consecutive_nights = 0;  // HC1, one per 3-day window
  std::int64_t double_assignments = 0;        // HC2, unrepresentable in a Schedule
  std::int64_t blank_limit_days = 0;          // HC3
  std::int64_t skill_mismatches = 0;          // HC4

  std::int64_t total() const noexcept {
    return three_consecutive_nights + double_assignments + blank_limit_days + skill_mismatches;
  }
  bool feasible() const noexcept { return total() == 0; }
  bool operator==(const HardViolationReport&) const = default;
};

using SoftCounts = std::array<std::int64_t, kSoftConstraintCount>;

struct PenaltyBreakdown {
  SoftCounts violations{};
  SoftCounts weighted{};
  std::int64_t total = 0;  // soft part only
  HardViolationReport hard;
  std::int64_t hard_penalty = 0;
  std::int64_t fitness = 0;

  std::int64_t violation(SoftConstraint id) const { return violations[static_cast<std::size_t>(id)]; }
  bool operator==(const PenaltyBreakdown&) const = default;
};

HardViolationReport check_hard(const Schedule& schedule, const RosterInstance& instance);

/// Violation count of a single soft constraint, independent of its weight.
std::int64_t soft_penalty(const Schedule& schedule, const RosterInstance& instance, SoftConstraint id);

/// Full evaluation; fitness is what both solvers minimize.
PenaltyBreakdown evaluate(const Schedule& schedule, const RosterInstance& instance);

}  // namespace nrp
