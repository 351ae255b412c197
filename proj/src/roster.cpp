#include "nurse_roster/roster.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace nrp {

namespace {

bool is_token(std::string_view text) {
  if (text.empty()) return false;
  return std::none_of(text.begin(), text.end(), [](unsigned char c) {
    return std::isspace(c) || c == '#' || c == ',' || c == '=' || c == '[' || c == ']';
  });
}

bool reserved_shift_id(std::string_view id) { return id == "-" || id == "Off" || id == "OFF" || id == "off"; }

void require(bool condition, const std::string& message) {
  if (!condition) throw InstanceError(message);
}

bool in_horizon(int day, int horizon) { return day >= 0 && day < horizon; }

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : InstanceError("line " + std::to_string(line) + ": " + message), line_(line) {}

RosterInstance::RosterInstance(InstanceSpec spec) : spec_(std::move(spec)) {
  const int horizon = spec_.horizon_days;
  require(horizon >= 1, "horizon_days must be at least 1");
  require(!spec_.nurses.empty(), "instance must have at least one nurse");
  require(!spec_.shifts.empty(), "instance must have at least one shift");
  require(is_token(spec_.name), "instance name must be a non-empty token");

  for (int d : spec_.weekend_days) require(d >= 0 && d < 7, "weekend day must be in [0, 7)");

  std::set<std::string> shift_ids;
  for (const auto& s : spec_.shifts) {
    require(is_token(s.id) && !reserved_shift_id(s.id), "invalid shift id '" + s.id + "'");
    require(shift_ids.insert(s.id).second, "duplicate shift id '" + s.id + "'");
    require(s.start_minute >= 0 && s.start_minute < kMinutesPerDay, "shift " + s.id + ": start out of range");
    require(s.end_minute >= 0 && s.end_minute < kMinutesPerDay, "shift " + s.id + ": end out of range");
    require(s.start_minute != s.end_minute, "shift " + s.id + ": start equals end");
    if (s.required_skill) require(is_token(*s.required_skill), "shift " + s.id + ": invalid skill");
  }

  std::set<int> nurse_ids;
  std::set<std::string> all_skills;
  for (const auto& n : spec_.nurses) {
    require(nurse_ids.insert(n.id).second, "duplicate nurse id " + std::to_string(n.id));
    require(is_token(n.name), "nurse " + std::to_string(n.id) + ": invalid name");
    require(n.max_minutes > 0, "nurse " + std::to_string(n.id) + ": max_minutes must be positive");
    for (const auto& skill : n.skills) {
      require(is_token(skill) && skill != "-", "nurse " + std::to_string(n.id) + ": invalid skill");
      all_skills.insert(skill);
    }
    for (int d : n.requested_days_off) require(in_horizon(d, horizon), "nurse " + std::to_string(n.id) + ": request day out of range");
    for (const auto* requests : {&n.requested_shifts_on, &n.requested_shifts_off}) {
      for (const auto& r : *requests) {
        require(in_horizon(r.day, horizon), "nurse " + std::to_string(n.id) + ": request day out of range");
        require(shift_ids.contains(r.shift), "nurse " + std::to_string(n.id) + ": unknown shift '" + r.shift + "' in request");
      }
    }
    for (const auto& r : n.requested_shifts_on) {
      require(!n.requested_shifts_off.contains(r),
              "nurse " + std::to_string(n.id) + ": shift requested both on and off");
    }
  }
  for (const auto& s : spec_.shifts) {
    if (s.required_skill) {
      require(all_skills.contains(*s.required_skill),
              "shift " + s.id + " requires skill '" + *s.required_skill + "' that no nurse has");
    }
  }

  for (auto [day, limit] : spec_.max_blank_by_day) {
    require(in_horizon(day, horizon), "blank limit override day out of range");
    require(limit > 0, "blank limit override must be positive");
  }

  const auto& c = spec_.constraints;
  for (auto w : c.weights) require(w >= 0, "constraint weights must be non-negative");
  const auto& l = c.limits;
  for (int v : {l.max_consecutive_free_days, l.max_shift_types, l.max_consecutive_same_shift,
                l.max_consecutive_working_days, l.max_shift_types_per_week, l.max_shifts_per_weekday,
                l.min_rest_minutes, l.max_working_bank_holidays, l.max_shifts_total, l.min_consecutive_free_days,
                l.max_working_weekends_in_4_weeks, l.min_consecutive_working_days, l.max_blank_per_day}) {
    require(v > 0, "constraint limits must be strictly positive");
  }
  for (int d : c.bank_holidays) require(in_horizon(d, horizon), "bank holiday out of range");
  for (const auto& [a, b] : c.forbidden_successions) {
    require(shift_ids.contains(a) && shift_ids.contains(b), "forbidden succession names unknown shift");
  }
  for (const auto& [required, substitute] : c.alternative_skills) {
    require(is_token(required) && is_token(substitute) && required != "-" && substitute != "-",
            "invalid alternative skill mapping");
  }

  const std::size_t shifts = spec_.shifts.size();
  skill_use_.resize(spec_.nurses.size() * shifts);
  for (std::size_t n = 0; n < spec_.nurses.size(); ++n) {
    const auto& skills = spec_.nurses[n].skills;
    for (std::size_t s = 0; s < shifts; ++s) {
      const auto& required = spec_.shifts[s].required_skill;
      SkillUse use = SkillUse::qualified;
      if (required && !skills.contains(*required)) {
        use = SkillUse::unqualified;
        for (const auto& [req, sub] : c.alternative_skills) {
          if (req == *required && skills.contains(sub)) use = SkillUse::substitute;
        }
      }
      skill_use_[n * shifts + s] = use;
    }
  }

  forbidden_.assign(shifts * shifts, 0);
  rest_.assign(shifts * shifts, 0);
  for (std::size_t a = 0; a < shifts; ++a) {
    const auto& today = spec_.shifts[a];
    const int finishes = today.start_minute + today.duration_minutes();
    for (std::size_t b = 0; b < shifts; ++b) {
      const auto& tomorrow = spec_.shifts[b];
      forbidden_[a * shifts + b] = c.forbidden_successions.contains({today.id, tomorrow.id}) ? 1 : 0;
      rest_[a * shifts + b] = kMinutesPerDay + tomorrow.start_minute - finishes;
    }
  }

  shifts_on_.resize(spec_.nurses.size());
  shifts_off_.resize(spec_.nurses.size());
  for (std::size_t n = 0; n < spec_.nurses.size(); ++n) {
    for (const auto& r : spec_.nurses[n].requested_shifts_on) shifts_on_[n].push_back({r.day, *shift_index(r.shift)});
    for (const auto& r : spec_.nurses[n].requested_shifts_off) shifts_off_[n].push_back({r.day, *shift_index(r.shift)});
  }
}

std::optional<int> RosterInstance::shift_index(std::string_view id) const {
  for (std::size_t i = 0; i < spec_.shifts.size(); ++i) {
    if (spec_.shifts[i].id == id) return static_cast<int>(i);
  }
  return std::nullopt;
}

int RosterInstance::max_blank(int day) const {
  auto it = spec_.max_blank_by_day.find(day);
  return it != spec_.max_blank_by_day.end() ? it->second : spec_.constraints.limits.max_blank_per_day;
}

void Schedule::assign(std::size_t nurse, std::size_t day, int value) {
  if (nurse >= nurses_) throw std::out_of_range("nurse index " + std::to_string(nurse) + " out of range");
  if (day >= days_) throw std::out_of_range("day index " + std::to_string(day) + " out of range");
  if (value < kOff) throw std::out_of_range("invalid assignment value");
  cells_[nurse * days_ + day] = value;
}

Schedule empty_schedule(const RosterInstance& instance) {
  return Schedule(instance.nurse_count(), instance.day_count());
}

void set_assignment(Schedule& schedule, const RosterInstance& instance, std::size_t nurse, std::size_t day,
                    std::string_view value) {
  require_matching_dimensions(schedule, instance);
  int index = Schedule::kOff;
  if (!reserved_shift_id(value)) {
    auto found = instance.shift_index(value);
    if (!found) throw InstanceError("unknown shift id '" + std::string(value) + "'");
    index = *found;
  }
  schedule.assign(nurse, day, index);
}

void require_matching_dimensions(const Schedule& schedule, const RosterInstance& instance) {
  if (schedule.nurse_count() != instance.nurse_count() || schedule.day_count() != instance.day_count()) {
    throw InstanceError("schedule is " + std::to_string(schedule.nurse_count()) + "x" +
                        std::to_string(schedule.day_count()) + " but instance is " +
                        std::to_string(instance.nurse_count()) + "x" + std::to_string(instance.day_count()));
  }
}

std::size_t working_days(const Schedule& schedule, std::size_t nurse) {
  std::size_t count = 0;
  for (std::size_t d = 0; d < schedule.day_count(); ++d) count += schedule.works(nurse, d) ? 1 : 0;
  return count;
}

std::vector<ShiftType> standard_shift_catalog() {
  return {
      {"V", 6 * 60, 14 * 60, "nurse", false},
      {"D", 8 * 60, 17 * 60, "nurse", false},
      {"DH", 8 * 60, 17 * 60, "head_nurse", false},
      {"L", 14 * 60, 22 * 60, "nurse", false},
      {"N", 22 * 60, 6 * 60, "nurse", true},
  };
}

namespace {

InstanceSpec standard_spec(std::string name, int nurses, int days, int head_nurses) {
  InstanceSpec spec;
  spec.name = std::move(name);
  spec.horizon_days = days;
  spec.shifts = standard_shift_catalog();
  for (int i = 0; i < nurses; ++i) {
    Nurse n;
    n.id = i;
    n.name = "nurse" + std::to_string(i);
    n.skills = {"nurse"};
    if (i < head_nurses) n.skills.insert("head_nurse");
    n.max_minutes = 40 * 60 * std::max(1, days / 7);
    spec.nurses.push_back(std::move(n));
  }
  return spec;
}

}  // namespace

RosterInstance reference_instance() {
  InstanceSpec spec = standard_spec("bcv-8.13.1", 13, 28, 3);
  // A handful of personal requests so the request constraints have something to count.
  spec.nurses[1].requested_days_off = {5, 6};
  spec.nurses[4].requested_shifts_on = {{2, "D"}, {3, "D"}};
  spec.nurses[7].requested_shifts_off = {{10, "N"}, {11, "N"}};
  spec.nurses[9].requested_days_off = {20};
  spec.constraints.bank_holidays = {0, 21};
  return RosterInstance(std::move(spec));
}

RosterInstance desk_instance(int nurses, int days) {
  return RosterInstance(standard_spec("desk-" + std::to_string(nurses), nurses, days, std::max(1, nurses / 4)));
}

}  // namespace nrp
