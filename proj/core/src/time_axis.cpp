#include "dhsim/time_axis.hpp"

#include <chrono>
#include <cstdio>

#include "dhsim/errors.hpp"

namespace dhsim {

namespace {
namespace chr = std::chrono;
}

CivilHour to_civil(HourStamp h) {
    std::int64_t days = h / 24;
    int hour = static_cast<int>(h % 24);
    if (hour < 0) {
        hour += 24;
        days -= 1;
    }
    chr::sys_days sd{chr::days{days}};
    chr::year_month_day ymd{sd};
    return CivilHour{int(ymd.year()), int(unsigned(ymd.month())), int(unsigned(ymd.day())), hour};
}

HourStamp from_civil(const CivilHour& c) {
    chr::year_month_day ymd{chr::year{c.year}, chr::month{unsigned(c.month)}, chr::day{unsigned(c.day)}};
    if (!ymd.ok()) throw ParseError("invalid calendar date");
    chr::sys_days sd{ymd};
    return static_cast<HourStamp>(sd.time_since_epoch().count()) * 24 + c.hour;
}

HourStamp parse_hour(const std::string& text) {
    CivilHour c{};
    int minute = 0, second = 0;
    char sep = 0;
    int n = std::sscanf(text.c_str(), "%d-%d-%d%c%d:%d:%d", &c.year, &c.month, &c.day, &sep, &c.hour,
                        &minute, &second);
    if (n < 6 || (sep != ' ' && sep != 'T'))
        throw ParseError("cannot parse timestamp '" + text + "' (expected YYYY-MM-DD HH:MM)");
    if (minute != 0 || second != 0)
        throw ParseError("timestamp '" + text + "' is not on an hour boundary");
    if (c.month < 1 || c.month > 12 || c.day < 1 || c.day > 31 || c.hour < 0 || c.hour > 23)
        throw ParseError("timestamp '" + text + "' out of range");
    return from_civil(c);
}

std::string format_hour(HourStamp h) {
    CivilHour c = to_civil(h);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d %02d:00", c.year, c.month, c.day, c.hour);
    return buf;
}

MonthKey month_key(HourStamp h) {
    CivilHour c = to_civil(h);
    return c.year * 100 + c.month;
}

std::string month_key_label(MonthKey key) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", key / 100, key % 100);
    return buf;
}

std::vector<MonthKey> TimeAxis::month_of_hour() const {
    std::vector<MonthKey> out(length);
    for (int t = 0; t < length; ++t) out[t] = month_key(stamp(t));
    return out;
}

std::vector<MonthKey> TimeAxis::months() const {
    std::vector<MonthKey> keys;
    for (int t = 0; t < length; ++t) {
        MonthKey k = month_key(stamp(t));
        if (keys.empty() || keys.back() != k) keys.push_back(k);
    }
    return keys;
}

}  // namespace dhsim
