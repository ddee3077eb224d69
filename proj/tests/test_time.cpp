#include <doctest.h>

#include "solarcast/time.hpp"

using namespace solarcast;

TEST_CASE("civil conversions round-trip") {
    const UtcMinute t = to_utc_minute({{2018, 1, 17}, 13, 35});
    const CivilTime c = to_civil(t);
    CHECK(c.date.year == 2018);
    CHECK(c.date.month == 1);
    CHECK(c.date.day == 17);
    CHECK(c.hour == 13);
    CHECK(c.minute == 35);
}

TEST_CASE("epoch reference") {
    CHECK(to_utc_minute({{1970, 1, 1}, 0, 0}).value == 0);
    CHECK(to_utc_minute({{1970, 1, 2}, 0, 0}).value == 1440);
}

TEST_CASE("day of year handles leap years") {
    CHECK(day_of_year(to_utc_minute({{2016, 1, 1}, 0, 0})) == 1);
    CHECK(day_of_year(to_utc_minute({{2016, 3, 1}, 0, 0})) == 61);   // 2016 is leap
    CHECK(day_of_year(to_utc_minute({{2017, 3, 1}, 0, 0})) == 60);
    CHECK(day_of_year(to_utc_minute({{2016, 12, 31}, 23, 55})) == 366);
}

TEST_CASE("fractional day and minute of day") {
    const UtcMinute noon = to_utc_minute({{2018, 6, 1}, 12, 0});
    CHECK(fractional_day(noon) == doctest::Approx(0.5));
    CHECK(minute_of_day(noon) == 720);
}

TEST_CASE("iso8601 round-trip") {
    const UtcMinute t = to_utc_minute({{2017, 11, 3}, 6, 5});
    CHECK(to_iso8601(t) == "2017-11-03T06:05Z");
    CHECK(parse_iso8601("2017-11-03T06:05Z") == t);
    CHECK(parse_iso8601(to_iso8601(t)) == t);
}
