#include "generators.hpp"

#include <string>
#include <vector>

namespace nrp::testing {

namespace {

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(std::mt19937_64& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

}  // namespace

RosterInstance random_instance(std::mt19937_64& rng, GeneratorBounds bounds) {
  static const std::vector<std::string> kSkills = {"nurse", "head_nurse", "senior"};
  InstanceSpec spec;
  spec.name = "random" + std::to_string(uniform_int(rng, 0, 9999));
  spec.horizon_days = uniform_int(rng, 1, bounds.max_days);
  spec.weekend_days.clear();
  for (int d = 0; d < 7; ++d) {
    if (coin(rng, 0.3)) spec.weekend_days.insert(d);
  }

  const int nurses = uniform_int(rng, 1, bounds.max_nurses);
  for (int i = 0; i < nurses; ++i) {
    Nurse n;
    n.id = i * 3 + uniform_int(rng, 0, 2);
    n.name = "n" + std::to_string(i);
    for (const auto& skill : kSkills) {
      if (coin(rng)) n.skills.insert(skill);
    }
    n.max_minutes = uniform_int(rng, 1, 3 * kMinutesPerDay);
    spec.nurses.push_back(std::move(n));
  }
  // Every skill in use must be held by somebody; the first nurse holds "nurse" at least.
  spec.nurses.front().skills.insert("nurse");

  const int shifts = uniform_int(rng, 1, bounds.max_shifts);
  for (int s = 0; s < shifts; ++s) {
    ShiftType shift;
    shift.id = "S" + std::to_string(s);
    shift.start_minute = uniform_int(rng, 0, 23) * 60 + 30 * uniform_int(rng, 0, 1);
    do {
      shift.end_minute = uniform_int(rng, 0, 23) * 60 + 30 * uniform_int(rng, 0, 1);
    } while (shift.end_minute == shift.start_minute);
    shift.is_night = coin(rng, 0.4);
    const int skill_choice = uniform_int(rng, 0, 3);
    if (skill_choice < 3) {
      // Only require skills some nurse holds.
      std::vector<std::string> held;
      for (const auto& n : spec.nurses) held.insert(held.end(), n.skills.begin(), n.skills.end());
      shift.required_skill = held[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(held.size()) - 1))];
    }
    spec.shifts.push_back(std::move(shift));
  }

  for (auto& n : spec.nurses) {
    for (int d = 0; d < spec.horizon_days; ++d) {
      if (coin(rng, 0.2)) n.requested_days_off.insert(d);
      for (const auto& s : spec.shifts) {
        const int r = uniform_int(rng, 0, 9);
        if (r == 0) n.requested_shifts_on.insert({d, s.id});
        else if (r == 1) n.requested_shifts_off.insert({d, s.id});
      }
    }
  }
  for (int d = 0; d < spec.horizon_days; ++d) {
    if (coin(rng, 0.2)) spec.max_blank_by_day[d] = uniform_int(rng, 1, 3);
  }

  auto& c = spec.constraints;
  for (auto& w : c.weights) w = uniform_int(rng, 0, 50);
  auto& l = c.limits;
  for (int* v : {&l.max_consecutive_free_days, &l.max_shift_types, &l.max_consecutive_same_shift,
                 &l.max_consecutive_working_days, &l.max_shift_types_per_week, &l.max_shifts_per_weekday,
                 &l.max_working_bank_holidays, &l.max_shifts_total, &l.min_consecutive_free_days,
                 &l.max_working_weekends_in_4_weeks, &l.min_consecutive_working_days, &l.max_blank_per_day}) {
    *v = uniform_int(rng, 1, 3);
  }
  l.min_rest_minutes = uniform_int(rng, 1, 24 * 60);
  for (int d = 0; d < spec.horizon_days; ++d) {
    if (coin(rng, 0.3)) c.bank_holidays.insert(d);
  }
  c.forbidden_successions.clear();
  for (const auto& a : spec.shifts) {
    for (const auto& b : spec.shifts) {
      if (coin(rng, 0.3)) c.forbidden_successions.emplace(a.id, b.id);
    }
  }
  for (const auto& required : kSkills) {
    for (const auto& substitute : kSkills) {
      if (required != substitute && coin(rng, 0.25)) c.alternative_skills.emplace(required, substitute);
    }
  }
  return RosterInstance(std::move(spec));
}

Schedule random_schedule(std::mt19937_64& rng, const RosterInstance& instance, double off_probability) {
  Schedule schedule = empty_schedule(instance);
  const int shifts = static_cast<int>(instance.shift_count());
  for (std::size_t n = 0; n < instance.nurse_count(); ++n) {
    for (std::size_t d = 0; d < instance.day_count(); ++d) {
      if (!coin(rng, off_probability)) schedule.assign(n, d, uniform_int(rng, 0, shifts - 1));
    }
  }
  return schedule;
}

}  // namespace nrp::testing
