#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nurse_roster/roster.hpp"

namespace nrp {

namespace {

constexpr std::string_view kWhitespace = " \t\r\n";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(kWhitespace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kWhitespace);
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, std::string_view separators = kWhitespace) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(separators, pos);
    if (start == std::string_view::npos) break;
    auto end = s.find_first_of(separators, start);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(start, end - start));
    pos = end;
  }
  return out;
}

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    auto line = text.substr(pos, end - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) lines.push_back({number, line});
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

int parse_int(std::string_view token, std::size_t line, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected integer for " + std::string(what) + ", got '" + std::string(token) + "'");
  }
  return value;
}

std::int64_t parse_int64(std::string_view token, std::size_t line, std::string_view what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected integer for " + std::string(what) + ", got '" + std::string(token) + "'");
  }
  return value;
}

int parse_clock(std::string_view token, std::size_t line) {
  if (token.size() != 5 || token[2] != ':') throw ParseError(line, "expected HH:MM, got '" + std::string(token) + "'");
  const int hours = parse_int(token.substr(0, 2), line, "hours");
  const int minutes = parse_int(token.substr(3, 2), line, "minutes");
  if (hours < 0 || hours > 23 || minutes < 0 || minutes > 59) {
    throw ParseError(line, "time out of range '" + std::string(token) + "'");
  }
  return hours * 60 + minutes;
}

std::string format_clock(int minute) {
  std::string out = "00:00";
  out[0] = static_cast<char>('0' + minute / 600);
  out[1] = static_cast<char>('0' + (minute / 60) % 10);
  out[3] = static_cast<char>('0' + (minute % 60) / 10);
  out[4] = static_cast<char>('0' + minute % 10);
  return out;
}

std::set<int> parse_int_set(std::string_view value, std::size_t line, std::string_view what) {
  std::set<int> out;
  for (auto token : split(value, " \t,")) out.insert(parse_int(token, line, what));
  return out;
}

std::set<std::pair<std::string, std::string>> parse_pairs(std::string_view value, char separator, std::size_t line,
                                                          std::string_view what) {
  std::set<std::pair<std::string, std::string>> out;
  for (auto token : split(value, " \t,")) {
    const auto at = token.find(separator);
    if (at == std::string_view::npos || at == 0 || at + 1 == token.size()) {
      throw ParseError(line, "malformed " + std::string(what) + " entry '" + std::string(token) + "'");
    }
    out.emplace(std::string(token.substr(0, at)), std::string(token.substr(at + 1)));
  }
  return out;
}

std::pair<std::string_view, std::string_view> key_value(const Line& line) {
  const auto eq = line.text.find('=');
  if (eq == std::string_view::npos) throw ParseError(line.number, "expected 'key = value'");
  auto key = trim(line.text.substr(0, eq));
  if (key.empty()) throw ParseError(line.number, "empty key");
  return {key, trim(line.text.substr(eq + 1))};
}

/// Name/accessor table for the integer limits, in canonical serialization order.
struct LimitField {
  std::string_view key;
  int ConstraintLimits::*member;
};

constexpr LimitField kLimitFields[] = {
    {"max_consecutive_free_days", &ConstraintLimits::max_consecutive_free_days},
    {"max_shift_types", &ConstraintLimits::max_shift_types},
    {"max_consecutive_same_shift", &ConstraintLimits::max_consecutive_same_shift},
    {"max_consecutive_working_days", &ConstraintLimits::max_consecutive_working_days},
    {"max_shift_types_per_week", &ConstraintLimits::max_shift_types_per_week},
    {"max_shifts_per_weekday", &ConstraintLimits::max_shifts_per_weekday},
    {"min_rest_minutes", &ConstraintLimits::min_rest_minutes},
    {"max_working_bank_holidays", &ConstraintLimits::max_working_bank_holidays},
    {"max_shifts_total", &ConstraintLimits::max_shifts_total},
    {"min_consecutive_free_days", &ConstraintLimits::min_consecutive_free_days},
    {"max_working_weekends_in_4_weeks", &ConstraintLimits::max_working_weekends_in_4_weeks},
    {"min_consecutive_working_days", &ConstraintLimits::min_consecutive_working_days},
    {"max_blank_per_day", &ConstraintLimits::max_blank_per_day},
};

enum class Section { none, meta, shifts, nurses, cover, constraints };

Section section_from_header(std::string_view header, std::size_t line) {
  if (header == "[META]") return Section::meta;
  if (header == "[SHIFTS]") return Section::shifts;
  if (header == "[NURSES]") return Section::nurses;
  if (header == "[COVER]") return Section::cover;
  if (header == "[CONSTRAINTS]") return Section::constraints;
  throw ParseError(line, "unknown section " + std::string(header));
}

class InstanceParser {
 public:
  RosterInstance parse(std::string_view text) {
    for (const auto& line : content_lines(text)) {
      if (line.text.front() == '[') {
        section_ = section_from_header(line.text, line.number);
        if (!seen_.insert(section_).second) throw ParseError(line.number, "duplicate section " + std::string(line.text));
        continue;
      }
      switch (section_) {
        case Section::none: throw ParseError(line.number, "content before first section header");
        case Section::meta: meta(line); break;
        case Section::shifts: shift(line); break;
        case Section::nurses: nurse(line); break;
        case Section::cover: cover(line); break;
        case Section::constraints: constraint(line); break;
      }
    }
    for (auto [section, name] : {std::pair{Section::meta, "[META]"}, std::pair{Section::shifts, "[SHIFTS]"},
                                 std::pair{Section::nurses, "[NURSES]"}}) {
      if (!seen_.contains(section)) throw InstanceError(std::string("missing section ") + name);
    }
    if (!has_horizon_) throw InstanceError("[META] must declare horizon_days");
    if (!keys_.contains("forbidden_successions@" + std::to_string(static_cast<int>(Section::constraints)))) {
      // The built-in successions only apply to the shifts this instance actually defines.
      std::set<std::string> ids;
      for (const auto& s : spec_.shifts) ids.insert(s.id);
      std::erase_if(spec_.constraints.forbidden_successions,
                    [&](const auto& pair) { return !ids.contains(pair.first) || !ids.contains(pair.second); });
    }
    return RosterInstance(std::move(spec_));
  }

 private:
  void unique_key(const Line& line, std::string_view key) {
    if (!keys_.insert(std::string(key) + "@" + std::to_string(static_cast<int>(section_))).second) {
      throw ParseError(line.number, "duplicate key '" + std::string(key) + "'");
    }
  }

  void meta(const Line& line) {
    auto [key, value] = key_value(line);
    unique_key(line, key);
    if (key == "name") {
      spec_.name = std::string(value);
    } else if (key == "horizon_days") {
      spec_.horizon_days = parse_int(value, line.number, key);
      has_horizon_ = true;
    } else if (key == "weekend_days") {
      spec_.weekend_days = parse_int_set(value, line.number, key);
    } else {
      throw ParseError(line.number, "unknown [META] key '" + std::string(key) + "'");
    }
  }

  void shift(const Line& line) {
    const auto fields = split(line.text);
    if (fields.size() != 5) throw ParseError(line.number, "shift record needs: id start end skill day|night");
    ShiftType s;
    s.id = std::string(fields[0]);
    s.start_minute = parse_clock(fields[1], line.number);
    s.end_minute = parse_clock(fields[2], line.number);
    if (fields[3] != "-") s.required_skill = std::string(fields[3]);
    if (fields[4] == "night") {
      s.is_night = true;
    } else if (fields[4] != "day") {
      throw ParseError(line.number, "shift kind must be 'day' or 'night'");
    }
    spec_.shifts.push_back(std::move(s));
  }

  Nurse& nurse_by_id(std::string_view token, std::size_t line) {
    const int id = parse_int(token, line, "nurse id");
    auto it = std::find_if(spec_.nurses.begin(), spec_.nurses.end(), [id](const Nurse& n) { return n.id == id; });
    if (it == spec_.nurses.end()) throw InstanceError("line " + std::to_string(line) + ": unknown nurse " + std::to_string(id));
    return *it;
  }

  void nurse(const Line& line) {
    const auto fields = split(line.text);
    const auto& kind = fields[0];
    if (kind == "nurse") {
      if (fields.size() != 5) throw ParseError(line.number, "nurse record needs: nurse id name max_minutes skills");
      Nurse n;
      n.id = parse_int(fields[1], line.number, "nurse id");
      n.name = std::string(fields[2]);
      n.max_minutes = parse_int(fields[3], line.number, "max_minutes");
      if (fields[4] != "-") {
        for (auto skill : split(fields[4], ",")) n.skills.insert(std::string(skill));
      }
      spec_.nurses.push_back(std::move(n));
    } else if (kind == "day_off") {
      if (fields.size() != 3) throw ParseError(line.number, "day_off record needs: day_off nurse day");
      nurse_by_id(fields[1], line.number).requested_days_off.insert(parse_int(fields[2], line.number, "day"));
    } else if (kind == "shift_on" || kind == "shift_off") {
      if (fields.size() != 4) throw ParseError(line.number, std::string(kind) + " record needs: nurse day shift");
      auto& n = nurse_by_id(fields[1], line.number);
      DayShift request{parse_int(fields[2], line.number, "day"), std::string(fields[3])};
      (kind == "shift_on" ? n.requested_shifts_on : n.requested_shifts_off).insert(std::move(request));
    } else {
      throw ParseError(line.number, "unknown [NURSES] record '" + std::string(kind) + "'");
    }
  }

  void cover(const Line& line) {
    const auto fields = split(line.text);
    if (fields.size() != 3 || fields[0] != "max_blank") throw ParseError(line.number, "cover record needs: max_blank day limit");
    const int day = parse_int(fields[1], line.number, "day");
    if (!spec_.max_blank_by_day.emplace(day, parse_int(fields[2], line.number, "limit")).second) {
      throw ParseError(line.number, "duplicate max_blank for day " + std::to_string(day));
    }
  }

  void constraint(const Line& line) {
    auto [key, value] = key_value(line);
    unique_key(line, key);
    auto& c = spec_.constraints;
    if (key.size() >= 3 && key.substr(0, 2) == "SC") {
      const int index = parse_int(key.substr(2), line.number, "constraint id");
      if (index < 1 || index > static_cast<int>(kSoftConstraintCount)) {
        throw ParseError(line.number, "unknown constraint '" + std::string(key) + "'");
      }
      c.weights[static_cast<std::size_t>(index - 1)] = parse_int64(value, line.number, key);
      return;
    }
    for (const auto& field : kLimitFields) {
      if (key == field.key) {
        c.limits.*field.member = parse_int(value, line.number, key);
        return;
      }
    }
    if (key == "bank_holidays") {
      c.bank_holidays = parse_int_set(value, line.number, key);
    } else if (key == "forbidden_successions") {
      c.forbidden_successions = parse_pairs(value, '>', line.number, key);
    } else if (key == "alternative_skills") {
      c.alternative_skills = parse_pairs(value, ':', line.number, key);
    } else {
      throw ParseError(line.number, "unknown constraint key '" + std::string(key) + "'");
    }
  }

  InstanceSpec spec_;
  Section section_ = Section::none;
  std::set<Section> seen_;
  std::set<std::string> keys_;
  bool has_horizon_ = false;
};

template <typename Range>
std::string join_ints(const Range& values) {
  std::string out;
  for (int v : values) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v);
  }
  return out;
}

void write_list(std::ostringstream& out, std::string_view key, const std::string& value) {
  out << key << " =";
  if (!value.empty()) out << ' ' << value;
  out << '\n';
}

}  // namespace

RosterInstance parse_instance(std::string_view text) { return InstanceParser{}.parse(text); }

std::string serialize_instance(const RosterInstance& instance) {
  const auto& spec = instance.spec();
  std::ostringstream out;
  out << "[META]\n";
  out << "name = " << spec.name << '\n';
  out << "horizon_days = " << spec.horizon_days << '\n';
  write_list(out, "weekend_days", join_ints(spec.weekend_days));

  out << "\n[SHIFTS]\n# id start end skill kind\n";
  for (const auto& s : spec.shifts) {
    out << s.id << ' ' << format_clock(s.start_minute) << ' ' << format_clock(s.end_minute) << ' '
        << s.required_skill.value_or("-") << ' ' << (s.is_night ? "night" : "day") << '\n';
  }

  out << "\n[NURSES]\n# nurse id name max_minutes skills\n";
  for (const auto& n : spec.nurses) {
    std::string skills;
    for (const auto& skill : n.skills) skills += (skills.empty() ? "" : ",") + skill;
    out << "nurse " << n.id << ' ' << n.name << ' ' << n.max_minutes << ' ' << (skills.empty() ? "-" : skills) << '\n';
  }
  for (const auto& n : spec.nurses) {
    for (int d : n.requested_days_off) out << "day_off " << n.id << ' ' << d << '\n';
    for (const auto& r : n.requested_shifts_on) out << "shift_on " << n.id << ' ' << r.day << ' ' << r.shift << '\n';
    for (const auto& r : n.requested_shifts_off) out << "shift_off " << n.id << ' ' << r.day << ' ' << r.shift << '\n';
  }

  if (!spec.max_blank_by_day.empty()) {
    out << "\n[COVER]\n";
    for (auto [day, limit] : spec.max_blank_by_day) out << "max_blank " << day << ' ' << limit << '\n';
  }

  const auto& c = spec.constraints;
  out << "\n[CONSTRAINTS]\n";
  for (std::size_t i = 0; i < kSoftConstraintCount; ++i) out << "SC" << i + 1 << " = " << c.weights[i] << '\n';
  for (const auto& field : kLimitFields) out << field.key << " = " << c.limits.*field.member << '\n';
  write_list(out, "bank_holidays", join_ints(c.bank_holidays));
  std::string pairs;
  for (const auto& [a, b] : c.forbidden_successions) pairs += (pairs.empty() ? "" : " ") + a + ">" + b;
  write_list(out, "forbidden_successions", pairs);
  pairs.clear();
  for (const auto& [a, b] : c.alternative_skills) pairs += (pairs.empty() ? "" : " ") + a + ":" + b;
  write_list(out, "alternative_skills", pairs);
  return out.str();
}

RosterInstance load_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceError("cannot open instance file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

Schedule parse_roster(std::string_view text, const RosterInstance& instance) {
  const auto lines = content_lines(text);
  if (lines.size() != instance.nurse_count()) {
    throw InstanceError("roster has " + std::to_string(lines.size()) + " rows, instance has " +
                        std::to_string(instance.nurse_count()) + " nurses");
  }
  Schedule schedule = empty_schedule(instance);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto tokens = split(lines[n].text);
    if (tokens.size() != instance.day_count()) {
      throw ParseError(lines[n].number, "expected " + std::to_string(instance.day_count()) + " assignments, got " +
                                            std::to_string(tokens.size()));
    }
    for (std::size_t d = 0; d < tokens.size(); ++d) {
      try {
        set_assignment(schedule, instance, n, d, tokens[d]);
      } catch (const InstanceError& e) {
        throw ParseError(lines[n].number, e.what());
      }
    }
  }
  return schedule;
}

std::string serialize_roster(const Schedule& schedule, const RosterInstance& instance) {
  require_matching_dimensions(schedule, instance);
  std::size_t width = 1;
  for (const auto& s : instance.spec().shifts) width = std::max(width, s.id.size());
  std::string out;
  for (std::size_t n = 0; n < schedule.nurse_count(); ++n) {
    for (std::size_t d = 0; d < schedule.day_count(); ++d) {
      const int cell = schedule.at(n, d);
      std::string token = cell == Schedule::kOff ? "-" : instance.shift(cell).id;
      if (d + 1 < schedule.day_count()) token.resize(width, ' ');
      out += token;
      if (d + 1 < schedule.day_count()) out += ' ';
    }
    out += '\n';
  }
  return out;
}

}  // namespace nrp
