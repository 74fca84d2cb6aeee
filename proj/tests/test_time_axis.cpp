#include <doctest.h>

#include "dhsim/errors.hpp"
#include "dhsim/time_axis.hpp"

using namespace dhsim;

TEST_CASE("parse/format round trip") {
    HourStamp h = parse_hour("2019-03-01 13:00");
    CHECK(format_hour(h) == "2019-03-01 13:00");
    CHECK(parse_hour("2019-03-01T13:00:00") == h);
    CHECK(parse_hour("1970-01-01 00:00") == 0);
    CHECK(parse_hour("1970-01-02 00:00") == 24);
}

TEST_CASE("non-hour timestamps are rejected") {
    CHECK_THROWS_AS(parse_hour("2019-03-01 13:30"), ParseError);
    CHECK_THROWS_AS(parse_hour("2019-03-01 13:00:30"), ParseError);
    CHECK_THROWS_AS(parse_hour("garbage"), ParseError);
    CHECK_THROWS_AS(parse_hour("2019-13-01 00:00"), ParseError);
}

TEST_CASE("civil conversion agrees with the calendar") {
    CivilHour c = to_civil(parse_hour("2020-02-29 23:00"));
    CHECK(c.year == 2020);
    CHECK(c.month == 2);
    CHECK(c.day == 29);
    CHECK(c.hour == 23);
    CHECK(from_civil(c) == parse_hour("2020-02-29 23:00"));
}

TEST_CASE("month keys over an axis") {
    TimeAxis axis;
    axis.start = parse_hour("2019-01-31 22:00");
    axis.length = 4;  // 22:00, 23:00, 00:00 (Feb), 01:00
    auto per_hour = axis.month_of_hour();
    REQUIRE(per_hour.size() == 4);
    CHECK(per_hour[0] == 201901);
    CHECK(per_hour[1] == 201901);
    CHECK(per_hour[2] == 201902);
    CHECK(per_hour[3] == 201902);
    auto months = axis.months();
    REQUIRE(months.size() == 2);
    CHECK(months[0] == 201901);
    CHECK(months[1] == 201902);
    CHECK(month_key_label(201902) == "2019-02");
}
