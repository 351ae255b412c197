#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "nurse_roster/roster.hpp"
#include "support/generators.hpp"

namespace nrp {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int count_sections(const std::string& text) {
  int sections = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) sections += (!line.empty() && line.front() == '[') ? 1 : 0;
  return sections;
}

std::string section_body(const std::string& text, const std::string& header) {
  const auto start = text.find(header);
  if (start == std::string::npos) return {};
  const auto body = text.find('\n', start) + 1;
  const auto end = text.find("\n[", body);
  return text.substr(body, end == std::string::npos ? std::string::npos : end - body);
}

constexpr const char* kMinimal = R"(
[META]
horizon_days = 1
[SHIFTS]
V 06:00 14:00 - day
[NURSES]
nurse 0 solo 480 -
)";

TEST(RosterModel, ReferenceFileHasStandardShifts) {
  const RosterInstance instance = load_instance_file(NRP_DATA_DIR "/bcv_8_13_1.nrp");
  EXPECT_EQ(instance.day_count(), 28u);
  EXPECT_EQ(instance.nurse_count(), 13u);
  ASSERT_EQ(instance.shift_count(), 5u);

  struct Expected {
    const char* id;
    int start;
    int end;
    const char* skill;
    bool night;
  };
  const Expected table[] = {{"V", 360, 840, "nurse", false},
                            {"D", 480, 1020, "nurse", false},
                            {"DH", 480, 1020, "head_nurse", false},
                            {"L", 840, 1320, "nurse", false},
                            {"N", 1320, 360, "nurse", true}};
  for (int i = 0; i < 5; ++i) {
    const auto& s = instance.shift(i);
    EXPECT_EQ(s.id, table[i].id);
    EXPECT_EQ(s.start_minute, table[i].start);
    EXPECT_EQ(s.end_minute, table[i].end);
    EXPECT_EQ(s.required_skill.value_or("-"), table[i].skill);
    EXPECT_EQ(s.is_night, table[i].night);
  }
  EXPECT_EQ(instance.shift(4).duration_minutes(), 8 * 60);
  EXPECT_EQ(instance, reference_instance());
}

TEST(RosterModel, DeskFileMatchesGenerator) {
  EXPECT_EQ(load_instance_file(NRP_DATA_DIR "/desk_8.nrp"), desk_instance(8, 28));
}

TEST(RosterModel, ReferenceSerializationListsFiveShifts) {
  const std::string text = serialize_instance(reference_instance());
  std::istringstream body(section_body(text, "[SHIFTS]"));
  int records = 0;
  for (std::string line; std::getline(body, line);) {
    if (!line.empty() && line.front() != '#') ++records;
  }
  EXPECT_EQ(records, 5);
}

TEST(RosterModel, MinimalInstanceSerializesToFourSections) {
  const RosterInstance instance = parse_instance(kMinimal);
  EXPECT_EQ(instance.nurse_count(), 1u);
  EXPECT_EQ(instance.day_count(), 1u);
  EXPECT_EQ(count_sections(serialize_instance(instance)), 4);
}

TEST(RosterModel, ZeroNursesIsRejected) {
  const std::string text = "[META]\nhorizon_days = 28\n[SHIFTS]\nV 06:00 14:00 - day\n[NURSES]\n";
  try {
    parse_instance(text);
    FAIL() << "expected InstanceError";
  } catch (const InstanceError& e) {
    EXPECT_NE(std::string(e.what()).find("at least one nurse"), std::string::npos);
  }
}

TEST(RosterModel, SyntaxErrorsCarryLineNumbers) {
  const std::string text = "[META]\nhorizon_days = 2\n[SHIFTS]\nV 6am 14:00 - day\n";
  try {
    parse_instance(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(RosterModel, SemanticErrors) {
  const std::string base = "[META]\nhorizon_days = 3\n[SHIFTS]\nV 06:00 14:00 - day\n[NURSES]\nnurse 0 a 480 -\n";
  EXPECT_THROW(parse_instance(base + "nurse 0 b 480 -\n"), InstanceError);            // duplicate id
  EXPECT_THROW(parse_instance(base + "shift_on 0 1 X\n"), InstanceError);              // unknown shift
  EXPECT_THROW(parse_instance(base + "day_off 0 3\n"), InstanceError);                 // day out of range
  EXPECT_THROW(parse_instance(base + "shift_on 0 1 V\nshift_off 0 1 V\n"), InstanceError);
  EXPECT_THROW(parse_instance("[META]\nhorizon_days = 3\n[NURSES]\nnurse 0 a 480 -\n"), InstanceError);
  EXPECT_THROW(parse_instance(base + "[CONSTRAINTS]\nSC22 = 1\n"), ParseError);
  EXPECT_THROW(parse_instance(base + "[CONSTRAINTS]\nmax_happiness = 1\n"), ParseError);
  EXPECT_THROW(parse_instance(base + "[CONSTRAINTS]\nmin_rest_minutes = 0\n"), InstanceError);
  EXPECT_THROW(parse_instance(base + "[META]\nname = again\n"), ParseError);  // duplicate section
  EXPECT_THROW(parse_instance("[META]\nhorizon_days = 1\n[SHIFTS]\nV 06:00 14:00 head day\n[NURSES]\nnurse 0 a 1 -\n"),
               InstanceError);  // skill nobody has
}

TEST(RosterModel, ConstraintSectionOverridesDefaults) {
  const std::string text = std::string(kMinimal) +
                           "[CONSTRAINTS]\nSC3 = 7\nmin_rest_minutes = 600\nforbidden_successions = V>V\n"
                           "bank_holidays = 0\n[COVER]\nmax_blank 0 2\n";
  const RosterInstance instance = parse_instance(text);
  EXPECT_EQ(instance.constraints().weights[2], 7);
  EXPECT_EQ(instance.constraints().weights[12], 10000);  // untouched default
  EXPECT_EQ(instance.limits().min_rest_minutes, 600);
  EXPECT_TRUE(instance.forbidden_succession(0, 0));
  EXPECT_TRUE(instance.is_bank_holiday(0));
  EXPECT_EQ(instance.max_blank(0), 2);
}

TEST(RosterModel, RoundTripOnGeneratedInstances) {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 100; ++i) {
    const RosterInstance instance = testing::random_instance(rng, {6, 30, 5});
    const std::string text = serialize_instance(instance);
    const RosterInstance reparsed = parse_instance(text);
    ASSERT_EQ(reparsed, instance) << text;
    ASSERT_EQ(serialize_instance(reparsed), text);
  }
}

TEST(RosterModel, EmptySchedule) {
  const RosterInstance reference = reference_instance();
  const Schedule schedule = empty_schedule(reference);
  EXPECT_EQ(schedule.nurse_count(), 13u);
  EXPECT_EQ(schedule.day_count(), 28u);
  for (std::size_t n = 0; n < 13; ++n) EXPECT_EQ(working_days(schedule, n), 0u);

  const Schedule single = empty_schedule(parse_instance(kMinimal));
  ASSERT_EQ(single.cells().size(), 1u);
  EXPECT_EQ(single.at(0, 0), Schedule::kOff);
}

TEST(RosterModel, SetAssignment) {
  const RosterInstance instance = reference_instance();
  Schedule schedule = empty_schedule(instance);
  set_assignment(schedule, instance, 0, 0, "V");
  EXPECT_EQ(working_days(schedule, 0), 1u);
  EXPECT_EQ(schedule.at(0, 0), *instance.shift_index("V"));
  std::size_t working = 0;
  for (int cell : schedule.cells()) working += cell != Schedule::kOff ? 1 : 0;
  EXPECT_EQ(working, 1u);

  set_assignment(schedule, instance, 0, 0, "Off");
  EXPECT_EQ(schedule, empty_schedule(instance));

  EXPECT_THROW(set_assignment(schedule, instance, 0, 28, "V"), std::out_of_range);
  EXPECT_THROW(set_assignment(schedule, instance, 13, 0, "V"), std::out_of_range);
  EXPECT_THROW(set_assignment(schedule, instance, 0, 0, "X"), InstanceError);
}

TEST(RosterModel, RosterFileRoundTrip) {
  const RosterInstance instance = reference_instance();
  std::mt19937_64 rng(7);
  const Schedule schedule = testing::random_schedule(rng, instance);
  EXPECT_EQ(parse_roster(serialize_roster(schedule, instance), instance), schedule);
  EXPECT_THROW(parse_roster("V V\n", instance), InstanceError);
}

}  // namespace
}  // namespace nrp
