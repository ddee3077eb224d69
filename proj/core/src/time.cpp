#include "solarcast/time.hpp"

#include <cstdio>

#include "solarcast/common.hpp"

namespace solarcast {

// Howard Hinnant's civil-days algorithms.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (static_cast<unsigned>(m) + (m > 2 ? -3 : 9)) + 2) / 5 +
                         static_cast<unsigned>(d) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return {static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

UtcMinute to_utc_minute(const CivilTime& t) {
    return {days_from_civil(t.date.year, t.date.month, t.date.day) * 1440 + t.hour * 60 +
            t.minute};
}

CivilTime to_civil(UtcMinute t) {
    std::int64_t days = t.value / 1440;
    std::int64_t rem = t.value % 1440;
    if (rem < 0) {
        rem += 1440;
        days -= 1;
    }
    CivilTime out;
    out.date = civil_from_days(days);
    out.hour = static_cast<int>(rem / 60);
    out.minute = static_cast<int>(rem % 60);
    return out;
}

int day_of_year(UtcMinute t) {
    const CivilTime c = to_civil(t);
    const std::int64_t jan1 = days_from_civil(c.date.year, 1, 1);
    std::int64_t days = t.value / 1440;
    if (t.value % 1440 < 0) days -= 1;
    return static_cast<int>(days - jan1) + 1;
}

double fractional_day(UtcMinute t) { return minute_of_day(t) / 1440.0; }

int minute_of_day(UtcMinute t) {
    std::int64_t rem = t.value % 1440;
    if (rem < 0) rem += 1440;
    return static_cast<int>(rem);
}

std::string to_iso8601(UtcMinute t) {
    const CivilTime c = to_civil(t);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02dZ", c.date.year, c.date.month,
                  c.date.day, c.hour, c.minute);
    return buf;
}

UtcMinute parse_iso8601(const std::string& s) {
    CivilTime c;
    int matched = std::sscanf(s.c_str(), "%d-%d-%dT%d:%d", &c.date.year, &c.date.month,
                              &c.date.day, &c.hour, &c.minute);
    if (matched != 5) throw ParseError("bad ISO-8601 timestamp: " + s);
    return to_utc_minute(c);
}

}  // namespace solarcast
