#include "solarcast/surfrad.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace solarcast {

namespace {

constexpr int kPairCount = 20;
constexpr int kTokensPerRow = 8 + 2 * kPairCount;
constexpr double kSentinel = -9999.9;

// Positions of the fields we keep within the 20 value/qc pairs.
enum PairIndex {
    kDwSolar = 0,
    kTemp = 15,
    kRh = 16,
    kWindSpd = 17,
    kWindDir = 18,
    kPressure = 19,
};

bool same(double a, double b) {
    if (std::isnan(a) && std::isnan(b)) return true;
    return a == b;
}

double field_or_missing(double value, int qc) {
    if (value <= -9999.0 || qc != 0) return kMissing;
    return value;
}

}  // namespace

bool Record::operator==(const Record& o) const {
    return timestamp == o.timestamp && same(zenith_deg, o.zenith_deg) && same(ghi, o.ghi) &&
           same(temp_c, o.temp_c) && same(rh_pct, o.rh_pct) &&
           same(wind_speed, o.wind_speed) && same(wind_dir_deg, o.wind_dir_deg) &&
           same(pressure_mb, o.pressure_mb) && qc_ghi == o.qc_ghi && qc_temp == o.qc_temp &&
           qc_rh == o.qc_rh && qc_wind_speed == o.qc_wind_speed &&
           qc_wind_dir == o.qc_wind_dir && qc_pressure == o.qc_pressure;
}

RecordSeries parse_surfrad_day(std::istream& in) {
    RecordSeries series;

    std::string line;
    if (!std::getline(in, line)) throw EmptyFile("empty SURFRAD file");
    {
        std::istringstream ss(line);
        ss >> std::ws;
        std::getline(ss, series.station);
        while (!series.station.empty() && std::isspace(static_cast<unsigned char>(series.station.back())))
            series.station.pop_back();
    }
    if (series.station.empty()) throw MalformedHeader("missing station name line");

    if (!std::getline(in, line)) throw MalformedHeader("missing latitude/longitude line");
    if (std::sscanf(line.c_str(), " %lf %lf", &series.latitude, &series.longitude) != 2)
        throw MalformedHeader("unreadable latitude/longitude line");

    int lineno = 2;
    UtcMinute prev{INT64_MIN};
    bool any_row = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        any_row = true;

        std::istringstream ss(line);
        std::vector<double> tok;
        tok.reserve(kTokensPerRow);
        double v;
        while (ss >> v) tok.push_back(v);
        if (!ss.eof()) {
            series.errors.push_back({lineno, "unparseable numeric token"});
            continue;
        }
        if (tok.size() < static_cast<std::size_t>(kTokensPerRow)) {
            series.errors.push_back({lineno, "short row: expected 48 fields"});
            continue;
        }

        CivilTime ct;
        ct.date.year = static_cast<int>(tok[0]);
        ct.date.month = static_cast<int>(tok[2]);
        ct.date.day = static_cast<int>(tok[3]);
        ct.hour = static_cast<int>(tok[4]);
        ct.minute = static_cast<int>(tok[5]);
        if (ct.date.month < 1 || ct.date.month > 12 || ct.date.day < 1 || ct.date.day > 31 ||
            ct.hour < 0 || ct.hour > 23 || ct.minute < 0 || ct.minute > 59) {
            series.errors.push_back({lineno, "invalid calendar fields"});
            continue;
        }

        Record rec;
        rec.timestamp = to_utc_minute(ct);
        if (rec.timestamp <= prev) {
            series.errors.push_back({lineno, "non-increasing timestamp"});
            continue;
        }
        rec.zenith_deg = tok[7] <= -9999.0 ? kMissing : tok[7];

        auto pair = [&](int idx, int& qc_out) {
            const double value = tok[8 + 2 * idx];
            const int qc = static_cast<int>(tok[8 + 2 * idx + 1]);
            qc_out = qc;
            return field_or_missing(value, qc);
        };
        rec.ghi = pair(kDwSolar, rec.qc_ghi);
        rec.temp_c = pair(kTemp, rec.qc_temp);
        rec.rh_pct = pair(kRh, rec.qc_rh);
        rec.wind_speed = pair(kWindSpd, rec.qc_wind_speed);
        rec.wind_dir_deg = pair(kWindDir, rec.qc_wind_dir);
        rec.pressure_mb = pair(kPressure, rec.qc_pressure);

        prev = rec.timestamp;
        series.records.push_back(rec);
    }
    if (!any_row && series.records.empty() && series.errors.empty())
        throw EmptyFile("SURFRAD file has no data rows");
    return series;
}

RecordSeries parse_surfrad_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return parse_surfrad_day(in);
}

std::string render_surfrad_day(const RecordSeries& series) {
    std::ostringstream out;
    char buf[64];
    out << " " << series.station << "\n";
    std::snprintf(buf, sizeof buf, " %10.5f %11.5f %4d m version 1\n", series.latitude,
                  series.longitude, 0);
    out << buf;

    for (const Record& rec : series.records) {
        const CivilTime ct = to_civil(rec.timestamp);
        const int jday = day_of_year(rec.timestamp);
        std::snprintf(buf, sizeof buf, "%4d %3d %2d %2d %2d %2d %6.3f", ct.date.year, jday,
                      ct.date.month, ct.date.day, ct.hour, ct.minute, 0.0);
        out << buf;
        std::snprintf(buf, sizeof buf, " %6.2f",
                      std::isnan(rec.zenith_deg) ? kSentinel : rec.zenith_deg);
        out << buf;

        auto emit = [&](double value, int qc) {
            std::snprintf(buf, sizeof buf, " %8.1f %1d",
                          std::isnan(value) ? kSentinel : value, qc);
            out << buf;
        };
        for (int p = 0; p < kPairCount; ++p) {
            switch (p) {
                case kDwSolar: emit(rec.ghi, rec.qc_ghi); break;
                case kTemp: emit(rec.temp_c, rec.qc_temp); break;
                case kRh: emit(rec.rh_pct, rec.qc_rh); break;
                case kWindSpd: emit(rec.wind_speed, rec.qc_wind_speed); break;
                case kWindDir: emit(rec.wind_dir_deg, rec.qc_wind_dir); break;
                case kPressure: emit(rec.pressure_mb, rec.qc_pressure); break;
                default: emit(kMissing, 0); break;
            }
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace solarcast
