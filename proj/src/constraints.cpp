#include "nurse_roster/constraints.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace nrp {

namespace {

constexpr std::string_view kSoftNames[kSoftConstraintCount] = {
    "Max consecutive free days",
    "Max hours worked",
    "Complete weekends",
    "Max shift types",
    "Requested shifts on",
    "Number of consecutive shift types",
    "Requested shifts off",
    "Maximum consecutive working days",
    "Max shift types per week",
    "Requested days off",
    "Shift type successions",
    "Max shifts for days of the week",
    "Skilled shifts",
    "Alternative skill",
    "Min time between shifts",
    "Night shifts before free weekend",
    "Max working bank holidays",
    "Max number of shifts",
    "Min consecutive free days",
    "Max working weekends in 4 weeks",
    "Min consecutive working days",
};

std::int64_t excess(std::int64_t value, std::int64_t limit) { return value > limit ? value - limit : 0; }

class SoftCounter {
 public:
  SoftCounter(const Schedule& schedule, const RosterInstance& instance)
      : schedule_(schedule), instance_(instance), limits_(instance.limits()), seen_(instance.shift_count()) {}

  SoftCounts count() {
    for (std::size_t n = 0; n < schedule_.nurse_count(); ++n) count_nurse(n);
    return counts_;
  }

 private:
  std::int64_t& at(SoftConstraint id) { return counts_[static_cast<std::size_t>(id)]; }

  void close_working_run(int length) {
    if (length == 0) return;
    at(SoftConstraint::max_consecutive_working_days) += excess(length, limits_.max_consecutive_working_days);
    if (length < limits_.min_consecutive_working_days) ++at(SoftConstraint::min_consecutive_working_days);
  }

  void close_free_run(int length) {
    if (length == 0) return;
    at(SoftConstraint::max_consecutive_free_days) += excess(length, limits_.max_consecutive_free_days);
    if (length < limits_.min_consecutive_free_days) ++at(SoftConstraint::min_consecutive_free_days);
  }

  void close_same_shift_run(int length) {
    at(SoftConstraint::max_consecutive_same_shift) += excess(length, limits_.max_consecutive_same_shift);
  }

  std::int64_t distinct_types(std::size_t nurse, int from, int to) {
    std::fill(seen_.begin(), seen_.end(), 0);
    std::int64_t distinct = 0;
    for (int d = from; d < to; ++d) {
      const int cell = schedule_.at(nurse, static_cast<std::size_t>(d));
      if (cell != Schedule::kOff && !seen_[static_cast<std::size_t>(cell)]) {
        seen_[static_cast<std::size_t>(cell)] = 1;
        ++distinct;
      }
    }
    return distinct;
  }

  void count_nurse(std::size_t n) {
    const int horizon = static_cast<int>(schedule_.day_count());
    const auto& nurse = instance_.spec().nurses[n];

    int working_run = 0;
    int free_run = 0;
    int same_run = 0;
    int previous = Schedule::kOff;
    std::int64_t minutes = 0;
    std::int64_t assigned = 0;
    std::int64_t bank_holidays = 0;
    std::array<std::int64_t, 7> per_weekday{};

    for (int d = 0; d < horizon; ++d) {
      const int cell = schedule_.at(n, static_cast<std::size_t>(d));
      if (cell == Schedule::kOff) {
        close_working_run(working_run);
        working_run = 0;
        if (previous != Schedule::kOff) close_same_shift_run(same_run);
        same_run = 0;
        ++free_run;
      } else {
        close_free_run(free_run);
        free_run = 0;
        ++working_run;
        if (cell == previous) {
          ++same_run;
        } else {
          if (previous != Schedule::kOff) close_same_shift_run(same_run);
          same_run = 1;
        }
        const auto& shift = instance_.shift(cell);
        minutes += shift.duration_minutes();
        ++assigned;
        ++per_weekday[static_cast<std::size_t>(d % 7)];
        if (instance_.is_bank_holiday(d)) ++bank_holidays;
        if (instance_.skill_use(n, cell) == SkillUse::substitute) {
          ++at(SoftConstraint::skilled_shifts);
          ++at(SoftConstraint::alternative_skill);
        }
        if (previous != Schedule::kOff) {
          if (instance_.forbidden_succession(previous, cell)) ++at(SoftConstraint::shift_type_successions);
          if (instance_.rest_minutes(previous, cell) < limits_.min_rest_minutes) {
            ++at(SoftConstraint::min_time_between_shifts);
          }
        }
        if (nurse.requested_days_off.contains(d)) ++at(SoftConstraint::requested_days_off);
      }
      previous = cell;
    }
    close_working_run(working_run);
    close_free_run(free_run);
    if (previous != Schedule::kOff) close_same_shift_run(same_run);

    if (minutes > nurse.max_minutes) at(SoftConstraint::max_hours_worked) += (minutes - nurse.max_minutes + 59) / 60;
    at(SoftConstraint::max_shift_types) += excess(distinct_types(n, 0, horizon), limits_.max_shift_types);
    at(SoftConstraint::max_number_of_shifts) += excess(assigned, limits_.max_shifts_total);
    at(SoftConstraint::max_working_bank_holidays) += excess(bank_holidays, limits_.max_working_bank_holidays);
    for (auto count : per_weekday) at(SoftConstraint::max_shifts_per_weekday) += excess(count, limits_.max_shifts_per_weekday);

    for (const auto& r : instance_.shifts_on(n)) {
      if (schedule_.at(n, static_cast<std::size_t>(r.day)) != r.shift) ++at(SoftConstraint::requested_shifts_on);
    }
    for (const auto& r : instance_.shifts_off(n)) {
      if (schedule_.at(n, static_cast<std::size_t>(r.day)) == r.shift) ++at(SoftConstraint::requested_shifts_off);
    }

    const auto& weekend_days = instance_.spec().weekend_days;
    const int weeks = (horizon + 6) / 7;
    std::int64_t weekends_in_block = 0;
    for (int w = 0; w < weeks; ++w) {
      at(SoftConstraint::max_shift_types_per_week) +=
          excess(distinct_types(n, 7 * w, std::min(horizon, 7 * w + 7)), limits_.max_shift_types_per_week);

      int in_horizon = 0;
      int worked = 0;
      for (int k : weekend_days) {
        const int d = 7 * w + k;
        if (d >= horizon) continue;
        ++in_horizon;
        if (schedule_.works(n, static_cast<std::size_t>(d))) ++worked;
      }
      if (in_horizon > 0) {
        if (worked > 0 && worked < in_horizon) ++at(SoftConstraint::complete_weekends);
        if (worked > 0) ++weekends_in_block;
        if (worked == 0) {
          const int friday = 7 * w + *weekend_days.begin() - 1;
          if (friday >= 0 && friday < horizon) {
            const int cell = schedule_.at(n, static_cast<std::size_t>(friday));
            if (cell != Schedule::kOff && instance_.shift(cell).is_night) ++at(SoftConstraint::night_before_free_weekend);
          }
        }
      }
      if (w % 4 == 3 || w == weeks - 1) {
        at(SoftConstraint::max_working_weekends) += excess(weekends_in_block, limits_.max_working_weekends_in_4_weeks);
        weekends_in_block = 0;
      }
    }
  }

  const Schedule& schedule_;
  const RosterInstance& instance_;
  const ConstraintLimits& limits_;
  std::vector<char> seen_;
  SoftCounts counts_{};
};

}  // namespace

SoftConstraint soft_constraint_from_number(int number) {
  if (number < 1 || number > static_cast<int>(kSoftConstraintCount)) {
    throw std::out_of_range("unknown soft constraint SC" + std::to_string(number));
  }
  return static_cast<SoftConstraint>(number - 1);
}

SoftConstraint soft_constraint_from_label(std::string_view label) {
  if (label.size() < 3 || label.substr(0, 2) != "SC") {
    throw std::invalid_argument("unknown soft constraint '" + std::string(label) + "'");
  }
  try {
    std::size_t used = 0;
    const std::string digits(label.substr(2));
    const int number = std::stoi(digits, &used);
    if (used != digits.size()) throw std::invalid_argument("trailing characters");
    return soft_constraint_from_number(number);
  } catch (const std::exception&) {
    throw std::invalid_argument("unknown soft constraint '" + std::string(label) + "'");
  }
}

std::string soft_constraint_label(SoftConstraint id) { return "SC" + std::to_string(static_cast<int>(id) + 1); }

std::string_view soft_constraint_name(SoftConstraint id) { return kSoftNames[static_cast<std::size_t>(id)]; }

HardViolationReport check_hard(const Schedule& schedule, const RosterInstance& instance) {
  require_matching_dimensions(schedule, instance);
  HardViolationReport report;
  const std::size_t days = schedule.day_count();
  auto night = [&](std::size_t n, std::size_t d) {
    const int cell = schedule.at(n, d);
    return cell != Schedule::kOff && instance.shift(cell).is_night;
  };
  for (std::size_t n = 0; n < schedule.nurse_count(); ++n) {
    int night_run = 0;
    for (std::size_t d = 0; d < days; ++d) {
      night_run = night(n, d) ? night_run + 1 : 0;
      if (night_run >= 3) ++report.three_consecutive_nights;
      const int cell = schedule.at(n, d);
      if (cell != Schedule::kOff && !instance.can_cover(n, cell)) ++report.skill_mismatches;
    }
  }
  for (std::size_t d = 0; d < days; ++d) {
    int blanks = 0;
    for (std::size_t n = 0; n < schedule.nurse_count(); ++n) blanks += schedule.works(n, d) ? 0 : 1;
    if (blanks > instance.max_blank(static_cast<int>(d))) ++report.blank_limit_days;
  }
  return report;
}

std::int64_t soft_penalty(const Schedule& schedule, const RosterInstance& instance, SoftConstraint id) {
  require_matching_dimensions(schedule, instance);
  const auto index = static_cast<std::size_t>(id);
  if (index >= kSoftConstraintCount) throw std::out_of_range("unknown soft constraint");
  return SoftCounter(schedule, instance).count()[index];
}

PenaltyBreakdown evaluate(const Schedule& schedule, const RosterInstance& instance) {
  require_matching_dimensions(schedule, instance);
  PenaltyBreakdown result;
  result.violations = SoftCounter(schedule, instance).count();
  const auto& weights = instance.constraints().weights;
  for (std::size_t k = 0; k < kSoftConstraintCount; ++k) {
    result.weighted[k] = result.violations[k] * weights[k];
    result.total += result.weighted[k];
  }
  result.hard = check_hard(schedule, instance);
  result.hard_penalty = result.hard.total() * kHardViolationPenalty;
  result.fitness = result.total + result.hard_penalty;
  return result;
}

}  // namespace nrp
