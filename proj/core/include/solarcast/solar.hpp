#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solarcast/common.hpp"
#include "solarcast/time.hpp"

namespace solarcast {

inline constexpr double kSolarConstant = 1361.0;  // W/m^2
inline constexpr double kDefaultKCap = 1.2;
inline constexpr double kDaytimeThreshold = 5.0;  // W/m^2 of normalizer

enum class ClearSkySource { Computed, ExternalCsv };

/// Per-timestamp irradiance normalizer (extraterrestrial horizontal or an
/// external clear-sky estimate), aligned 1:1 with the requested timestamps.
struct ClearSkySeries {
    std::vector<UtcMinute> timestamps;
    std::vector<double> e_ext;  // >= 0
    ClearSkySource source = ClearSkySource::Computed;
};

/// Top-of-atmosphere horizontal irradiance: S_c * eccentricity(day) * cos(zenith),
/// floored at zero. Total over the whole zenith range.
double compute_extraterrestrial(UtcMinute timestamp, double zenith_deg,
                                double solar_constant = kSolarConstant);

/// Clearness index clamp(ghi / e_ext, 0, k_cap); nullopt marks night
/// (normalizer at or below the daytime threshold).
std::optional<double> clearness_index(double ghi, double e_ext, double k_cap = kDefaultKCap,
                                      double daytime_threshold = kDaytimeThreshold);

ClearSkySeries compute_clearsky(const std::vector<UtcMinute>& timestamps,
                                const std::vector<double>& zenith_deg,
                                double solar_constant = kSolarConstant);

/// CSV with header "timestamp,e_ext"; ISO-8601 UTC timestamps.
ClearSkySeries load_clearsky_csv(const std::string& path);

}  // namespace solarcast
