#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nrp {

inline constexpr int kMinutesPerDay = 1440;
inline constexpr std::size_t kSoftConstraintCount = 21;

/// Raised for semantically invalid instances (and, via ParseError, malformed files).
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InstanceError {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct ShiftType {
  std::string id;
  int start_minute = 0;
  int end_minute = 0;  // earlier than start means the shift ends on the next day
  std::optional<std::string> required_skill;
  bool is_night = false;

  int duration_minutes() const noexcept {
    return ((end_minute - start_minute) % kMinutesPerDay + kMinutesPerDay) % kMinutesPerDay;
  }
  bool operator==(const ShiftType&) const = default;
};

struct DayShift {
  int day = 0;
  std::string shift;
  auto operator<=>(const DayShift&) const = default;
};

struct Nurse {
  int id = 0;
  std::string name;
  std::set<std::string> skills;
  int max_minutes = 40 * 60 * 4;
  std::set<int> requested_days_off;
  std::set<DayShift> requested_shifts_on;
  std::set<DayShift> requested_shifts_off;

  bool operator==(const Nurse&) const = default;
};

/// Numeric parameters of the soft and hard constraints. All must be strictly positive.
struct ConstraintLimits {
  int max_consecutive_free_days = 3;        // SC1
  int max_shift_types = 3;                  // SC4
  int max_consecutive_same_shift = 4;       // SC6
  int max_consecutive_working_days = 6;     // SC8
  int max_shift_types_per_week = 2;         // SC9
  int max_shifts_per_weekday = 4;           // SC12
  int min_rest_minutes = 660;               // SC15
  int max_working_bank_holidays = 1;        // SC17
  int max_shifts_total = 20;                // SC18
  int min_consecutive_free_days = 2;        // SC19
  int max_working_weekends_in_4_weeks = 3;  // SC20
  int min_consecutive_working_days = 2;     // SC21
  int max_blank_per_day = 5;                // HC3

  bool operator==(const ConstraintLimits&) const = default;
};

using SoftWeights = std::array<std::int64_t, kSoftConstraintCount>;

/// Default weights, SC1..SC21 in order.
inline constexpr SoftWeights kDefaultSoftWeights = {
    0, 1, 40, 5, 0, 5, 0, 5, 1, 0, 10, 1, 10000, 1, 20, 0, 10, 5, 1, 7, 1,
};

struct ConstraintConfig {
  SoftWeights weights = kDefaultSoftWeights;
  ConstraintLimits limits;
  std::set<int> bank_holidays;
  /// Ordered (today, tomorrow) shift pairs penalized by SC11.
  std::set<std::pair<std::string, std::string>> forbidden_successions = {
      {"N", "V"}, {"N", "D"}, {"N", "DH"}, {"L", "V"}};
  /// (required skill, substitute skill): a nurse holding the substitute may cover the shift.
  std::set<std::pair<std::string, std::string>> alternative_skills;

  bool operator==(const ConstraintConfig&) const = default;
};

/// Plain description of an instance as written in an instance file.
struct InstanceSpec {
  std::string name = "instance";
  int horizon_days = 28;
  std::set<int> weekend_days = {5, 6};  // day % 7, day 0 is a Monday
  std::vector<ShiftType> shifts;
  std::vector<Nurse> nurses;
  std::map<int, int> max_blank_by_day;  // per-day overrides of limits.max_blank_per_day
  ConstraintConfig constraints;

  bool operator==(const InstanceSpec&) const = default;
};

enum class SkillUse : std::uint8_t { qualified, substitute, unqualified };

/// A validated, immutable instance with lookup tables derived from its spec.
class RosterInstance {
 public:
  explicit RosterInstance(InstanceSpec spec);

  const InstanceSpec& spec() const noexcept { return spec_; }
  const ConstraintConfig& constraints() const noexcept { return spec_.constraints; }
  const ConstraintLimits& limits() const noexcept { return spec_.constraints.limits; }

  std::size_t nurse_count() const noexcept { return spec_.nurses.size(); }
  std::size_t day_count() const noexcept { return static_cast<std::size_t>(spec_.horizon_days); }
  std::size_t shift_count() const noexcept { return spec_.shifts.size(); }
  /// Shifts plus Off.
  std::size_t option_count() const noexcept { return spec_.shifts.size() + 1; }

  const ShiftType& shift(int index) const { return spec_.shifts.at(static_cast<std::size_t>(index)); }
  std::optional<int> shift_index(std::string_view id) const;

  SkillUse skill_use(std::size_t nurse, int shift) const {
    return skill_use_[nurse * shift_count() + static_cast<std::size_t>(shift)];
  }
  bool can_cover(std::size_t nurse, int shift) const { return skill_use(nurse, shift) != SkillUse::unqualified; }

  bool forbidden_succession(int today, int tomorrow) const {
    return forbidden_[static_cast<std::size_t>(today) * shift_count() + static_cast<std::size_t>(tomorrow)] != 0;
  }
  /// Minutes between the end of `today` on day d and the start of `tomorrow` on day d+1.
  int rest_minutes(int today, int tomorrow) const {
    return rest_[static_cast<std::size_t>(today) * shift_count() + static_cast<std::size_t>(tomorrow)];
  }

  bool is_weekend_day(int day) const { return spec_.weekend_days.contains(day % 7); }
  bool is_bank_holiday(int day) const { return spec_.constraints.bank_holidays.contains(day); }
  int max_blank(int day) const;

  struct IndexedRequest {
    int day;
    int shift;
  };
  const std::vector<IndexedRequest>& shifts_on(std::size_t nurse) const { return shifts_on_[nurse]; }
  const std::vector<IndexedRequest>& shifts_off(std::size_t nurse) const { return shifts_off_[nurse]; }

  bool operator==(const RosterInstance& other) const { return spec_ == other.spec_; }

 private:
  InstanceSpec spec_;
  std::vector<SkillUse> skill_use_;
  std::vector<std::uint8_t> forbidden_;
  std::vector<int> rest_;
  std::vector<std::vector<IndexedRequest>> shifts_on_;
  std::vector<std::vector<IndexedRequest>> shifts_off_;
};

/// Nurse x day grid; each cell holds a shift index or kOff, so one shift per nurse per day by construction.
class Schedule {
 public:
  static constexpr int kOff = -1;

  Schedule() = default;
  Schedule(std::size_t nurses, std::size_t days) : nurses_(nurses), days_(days), cells_(nurses * days, kOff) {}

  std::size_t nurse_count() const noexcept { return nurses_; }
  std::size_t day_count() const noexcept { return days_; }

  int at(std::size_t nurse, std::size_t day) const { return cells_[nurse * days_ + day]; }
  bool works(std::size_t nurse, std::size_t day) const { return at(nurse, day) != kOff; }
  /// Bounds-checked write of a shift index or kOff; does not know the shift catalog.
  void assign(std::size_t nurse, std::size_t day, int value);

  const std::vector<int>& cells() const noexcept { return cells_; }

  bool operator==(const Schedule&) const = default;

 private:
  std::size_t nurses_ = 0;
  std::size_t days_ = 0;
  std::vector<int> cells_;
};

Schedule empty_schedule(const RosterInstance& instance);

/// Sets one cell by shift id; "Off" (or "-") clears it. Throws std::out_of_range / InstanceError.
void set_assignment(Schedule& schedule, const RosterInstance& instance, std::size_t nurse, std::size_t day,
                    std::string_view value);

/// Throws InstanceError when the grid does not have the instance's dimensions.
void require_matching_dimensions(const Schedule& schedule, const RosterInstance& instance);

std::size_t working_days(const Schedule& schedule, std::size_t nurse);

RosterInstance parse_instance(std::string_view text);
std::string serialize_instance(const RosterInstance& instance);
RosterInstance load_instance_file(const std::string& path);

/// Roster files: one line per nurse, whitespace-separated shift ids, "-" for Off, '#' comments.
Schedule parse_roster(std::string_view text, const RosterInstance& instance);
std::string serialize_roster(const Schedule& schedule, const RosterInstance& instance);

/// The standard five shifts (V, D, DH, L, N); DH requires head_nurse, the rest require nurse.
std::vector<ShiftType> standard_shift_catalog();
/// 13 nurses, 28 days, the standard shift catalog, default constraint parameters.
RosterInstance reference_instance();
/// Smaller instance with the same shape rules, used for quick experiments.
RosterInstance desk_instance(int nurses = 8, int days = 28);

}  // namespace nrp
