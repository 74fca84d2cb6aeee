#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dhsim {

// Naive local calendar hour, stored as hours since 1970-01-01 00:00.
// Daylight-saving duplicates/skips must be pre-resolved in the input data.
using HourStamp = std::int64_t;

struct CivilHour {
    int year;
    int month;  // 1..12
    int day;    // 1..31
    int hour;   // 0..23
};

CivilHour to_civil(HourStamp h);
HourStamp from_civil(const CivilHour& c);

// Parses "YYYY-MM-DD HH:MM[:SS]" (or with 'T'); minutes/seconds must be zero.
HourStamp parse_hour(const std::string& text);
std::string format_hour(HourStamp h);

// Calendar month key, e.g. 201903 for March 2019.
using MonthKey = int;
MonthKey month_key(HourStamp h);
std::string month_key_label(MonthKey key);

struct TimeAxis {
    HourStamp start = 0;
    int length = 0;
    int block_length = 24;

    HourStamp stamp(int t) const { return start + t; }

    // Month key for every hour of the axis, plus the distinct keys in order.
    std::vector<MonthKey> month_of_hour() const;
    std::vector<MonthKey> months() const;
};

}  // namespace dhsim
