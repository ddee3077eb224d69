#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "solarcast/common.hpp"
#include "solarcast/time.hpp"

namespace solarcast {

struct MalformedHeader : ParseError {
    using ParseError::ParseError;
};
struct EmptyFile : ParseError {
    using ParseError::ParseError;
};

/// One timestamped station observation. Fields failing quality control are
/// NaN; the raw qc codes are kept alongside.
struct Record {
    UtcMinute timestamp;
    double zenith_deg = kMissing;
    double ghi = kMissing;  // downwelling global solar, W/m^2
    double temp_c = kMissing;
    double rh_pct = kMissing;
    double wind_speed = kMissing;
    double wind_dir_deg = kMissing;
    double pressure_mb = kMissing;
    int qc_ghi = 0;
    int qc_temp = 0;
    int qc_rh = 0;
    int qc_wind_speed = 0;
    int qc_wind_dir = 0;
    int qc_pressure = 0;

    bool operator==(const Record&) const;
};

struct RowError {
    int line = 0;
    std::string message;
};

struct RecordSeries {
    std::string station;
    double latitude = 0.0;
    double longitude = 0.0;
    std::vector<Record> records;   // strictly increasing timestamps
    std::vector<RowError> errors;  // rows skipped during parse
};

/// Parses one SURFRAD daily LV1.0 file: station line, lat/lon line, then
/// whitespace-separated data rows (8 time/geometry fields + 20 value/qc
/// pairs). Unparseable rows are collected into `errors`, not fatal.
RecordSeries parse_surfrad_day(std::istream& in);
RecordSeries parse_surfrad_file(const std::string& path);

/// Renders a series back to the daily column layout; fields this library does
/// not keep are written as the -9999.9 missing sentinel. parse(render(s)) == s.
std::string render_surfrad_day(const RecordSeries& series);

}  // namespace solarcast
