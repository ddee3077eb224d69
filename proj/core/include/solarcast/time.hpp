#pragma once

#include <cstdint>
#include <string>

namespace solarcast {

/// UTC instant at minute precision, stored as minutes since the Unix epoch.
struct UtcMinute {
    std::int64_t value = 0;

    auto operator<=>(const UtcMinute&) const = default;

    UtcMinute operator+(std::int64_t minutes) const { return {value + minutes}; }
    UtcMinute operator-(std::int64_t minutes) const { return {value - minutes}; }
    std::int64_t operator-(UtcMinute other) const { return value - other.value; }
};

struct CivilDate {
    int year = 1970;
    int month = 1;
    int day = 1;
};

struct CivilTime {
    CivilDate date;
    int hour = 0;
    int minute = 0;
};

std::int64_t days_from_civil(int year, int month, int day);
CivilDate civil_from_days(std::int64_t days);

UtcMinute to_utc_minute(const CivilTime& t);
CivilTime to_civil(UtcMinute t);

/// 1-based ordinal day within the year.
int day_of_year(UtcMinute t);

/// Fraction of the UTC day elapsed, in [0, 1).
double fractional_day(UtcMinute t);

/// Minutes past UTC midnight, in [0, 1440).
int minute_of_day(UtcMinute t);

/// ISO-8601 "YYYY-MM-DDTHH:MMZ".
std::string to_iso8601(UtcMinute t);
UtcMinute parse_iso8601(const std::string& s);

}  // namespace solarcast
