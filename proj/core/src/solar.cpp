#include "solarcast/solar.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace solarcast {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;
}  // namespace

double compute_extraterrestrial(UtcMinute timestamp, double zenith_deg,
                                double solar_constant) {
    const int n = day_of_year(timestamp);
    const double eccentricity = 1.0 + 0.033 * std::cos(2.0 * kPi * n / 365.0);
    const double cos_zenith = std::cos(zenith_deg * kDegToRad);
    return std::max(0.0, solar_constant * eccentricity * cos_zenith);
}

std::optional<double> clearness_index(double ghi, double e_ext, double k_cap,
                                      double daytime_threshold) {
    if (!(e_ext > daytime_threshold)) return std::nullopt;
    return std::clamp(ghi / e_ext, 0.0, k_cap);
}

ClearSkySeries compute_clearsky(const std::vector<UtcMinute>& timestamps,
                                const std::vector<double>& zenith_deg,
                                double solar_constant) {
    if (timestamps.size() != zenith_deg.size())
        throw DataError("clearsky: timestamp/zenith length mismatch");
    ClearSkySeries out;
    out.source = ClearSkySource::Computed;
    out.timestamps = timestamps;
    out.e_ext.resize(timestamps.size());
    for (std::size_t i = 0; i < timestamps.size(); ++i) {
        out.e_ext[i] = std::isnan(zenith_deg[i])
                           ? 0.0
                           : compute_extraterrestrial(timestamps[i], zenith_deg[i],
                                                      solar_constant);
    }
    return out;
}

ClearSkySeries load_clearsky_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    ClearSkySeries out;
    out.source = ClearSkySource::ExternalCsv;

    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty clear-sky CSV: " + path);
    if (line.rfind("timestamp,e_ext", 0) != 0)
        throw ParseError("clear-sky CSV must start with header 'timestamp,e_ext'");

    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError("clear-sky CSV line " + std::to_string(lineno) + ": missing comma");
        const UtcMinute t = parse_iso8601(line.substr(0, comma));
        const double v = std::stod(line.substr(comma + 1));
        if (v < 0.0)
            throw ParseError("clear-sky CSV line " + std::to_string(lineno) + ": negative value");
        if (!out.timestamps.empty() && t <= out.timestamps.back())
            throw ParseError("clear-sky CSV line " + std::to_string(lineno) +
                             ": non-increasing timestamp");
        out.timestamps.push_back(t);
        out.e_ext.push_back(v);
    }
    return out;
}

}  // namespace solarcast
