#include "solarcast/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "solarcast/rng.hpp"
#include "solarcast/solar.hpp"
#include "solarcast/time.hpp"

namespace solarcast {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;

double solar_zenith_deg(double lat_deg, double lon_deg, UtcMinute t) {
    const int n = day_of_year(t);
    const double decl = -23.44 * std::cos(2.0 * kPi * (n + 10) / 365.0) * kDegToRad;
    const double solar_hour = minute_of_day(t) / 60.0 + lon_deg / 15.0;
    const double hour_angle = (solar_hour - 12.0) * 15.0 * kDegToRad;
    const double lat = lat_deg * kDegToRad;
    const double cos_z = std::sin(lat) * std::sin(decl) +
                         std::cos(lat) * std::cos(decl) * std::cos(hour_angle);
    return std::acos(std::clamp(cos_z, -1.0, 1.0)) / kDegToRad;
}
}  // namespace

RecordSeries synth_day(const SynthOptions& opts, int year, int month, int day,
                       std::uint64_t day_seed) {
    Rng rng(day_seed);

    // Weather regime for the day: clear, mixed, or overcast.
    const double regime_draw = rng.uniform();
    double k_mean, k_sd, ar;
    if (regime_draw < 0.45) {
        k_mean = 0.75;
        k_sd = 0.04;
        ar = 0.97;
    } else if (regime_draw < 0.8) {
        k_mean = 0.55;
        k_sd = 0.18;
        ar = 0.95;
    } else {
        k_mean = 0.25;
        k_sd = 0.10;
        ar = 0.96;
    }

    const double temp_base = rng.uniform(-5.0, 28.0);
    const double pressure_base = rng.uniform(975.0, 1005.0);
    const double rh_base = rng.uniform(30.0, 85.0);
    const double wind_base = rng.uniform(0.5, 8.0);
    const double wind_dir_base = rng.uniform(0.0, 360.0);

    RecordSeries series;
    series.station = opts.station;
    series.latitude = opts.latitude;
    series.longitude = opts.longitude;

    double x = rng.normal();  // standardized AR(1) state
    const UtcMinute midnight = to_utc_minute({{year, month, day}, 0, 0});
    for (int i = 0; i < 288; ++i) {
        const UtcMinute t = midnight + i * 5;
        x = ar * x + std::sqrt(1.0 - ar * ar) * rng.normal();
        const double k = std::clamp(k_mean + k_sd * x, 0.0, 1.1);

        Record rec;
        rec.timestamp = t;
        rec.zenith_deg = solar_zenith_deg(opts.latitude, opts.longitude, t);
        const double e_ext = compute_extraterrestrial(t, rec.zenith_deg);
        const double noise = 0.5 * rng.normal();
        rec.ghi = std::max(0.0, k * e_ext + noise);

        const double tod = fractional_day(t);
        rec.temp_c = temp_base + 6.0 * std::sin(2.0 * kPi * (tod - 0.35)) + 0.3 * rng.normal();
        rec.rh_pct = std::clamp(rh_base - 12.0 * std::sin(2.0 * kPi * (tod - 0.35)) +
                                    1.5 * rng.normal(),
                                2.0, 100.0);
        rec.wind_speed = std::max(0.0, wind_base + 1.2 * rng.normal());
        rec.wind_dir_deg = std::fmod(wind_dir_base + 20.0 * rng.normal() + 720.0, 360.0);
        rec.pressure_mb = pressure_base + 1.0 * rng.normal();
        series.records.push_back(rec);
    }
    return series;
}

std::vector<std::string> write_sample_archive(const std::string& data_dir,
                                              const SynthOptions& opts) {
    namespace fs = std::filesystem;
    std::vector<std::string> written;

    for (int year : opts.years) {
        const fs::path dir = fs::path(data_dir) / opts.code / std::to_string(year);
        fs::create_directories(dir);
        const UtcMinute first = to_utc_minute({{year, opts.start_month, 1}, 0, 0});
        for (int d = 0; d < opts.days_per_year; ++d) {
            const UtcMinute day_start = first + static_cast<std::int64_t>(d) * 1440;
            const CivilTime ct = to_civil(day_start);
            const std::uint64_t day_seed =
                mix_seed(opts.seed, static_cast<std::uint64_t>(year) * 1000 +
                                        static_cast<std::uint64_t>(day_of_year(day_start)));
            const RecordSeries series =
                synth_day(opts, ct.date.year, ct.date.month, ct.date.day, day_seed);

            char name[32];
            std::snprintf(name, sizeof name, "%s%02d%03d.dat", opts.code.c_str(), year % 100,
                          day_of_year(day_start));
            const fs::path path = dir / name;
            std::ofstream out(path);
            if (!out) throw IoError("cannot write " + path.string());
            out << render_surfrad_day(series);
            written.push_back(path.string());
        }
    }
    return written;
}

}  // namespace solarcast
