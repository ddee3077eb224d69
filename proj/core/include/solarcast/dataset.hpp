#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "solarcast/common.hpp"
#include "solarcast/solar.hpp"
#include "solarcast/surfrad.hpp"
#include "solarcast/time.hpp"

namespace solarcast {

struct EmptyDataset : DataError {
    using DataError::DataError;
};
struct MisalignedClearSky : DataError {
    using DataError::DataError;
};

enum class Resolution { FiveMin, Hourly };

std::string to_string(Resolution r);
Resolution resolution_from_string(const std::string& s);

/// Grid step of a resolution, in minutes.
std::int64_t step_minutes(Resolution r);

struct IngestOptions {
    double k_cap = kDefaultKCap;
    double daytime_threshold = kDaytimeThreshold;
    double solar_constant = kSolarConstant;
};

/// One grid point of a station's clearness-index series with the met fields
/// needed as model inputs. NaN marks missing.
struct KPoint {
    UtcMinute t;
    double k = kMissing;     // clearness index; NaN at night or when GHI missing
    double e_ext = 0.0;      // normalizer at t
    double ghi = kMissing;   // W/m^2
    double zenith = kMissing;
    double temp = kMissing;
    double rh = kMissing;
    double wind_speed = kMissing;
    double wind_dir = kMissing;
    double pressure = kMissing;
    bool daytime = false;    // e_ext above the positivity threshold
};

struct KSeries {
    std::string station;
    Resolution resolution = Resolution::FiveMin;
    std::vector<KPoint> points;  // strictly increasing timestamps

    /// Index of the point at exactly t, if present.
    std::optional<std::size_t> find(UtcMinute t) const;
};

/// Builds the 5-minute clearness-index series from parsed daily files and a
/// normalizer source. Daily series must be in chronological order.
KSeries build_kseries(const std::vector<RecordSeries>& days, const ClearSkySeries* external,
                      const IngestOptions& opts = {});

/// Aggregates a 5-minute series into hour-ending means. An hour is kept when
/// at least half of its expected GHI samples are present.
KSeries aggregate_hourly(const KSeries& five_min, const IngestOptions& opts = {});

inline constexpr std::size_t kNumLags = 5;
inline constexpr std::size_t kNumMetFeatures = 8;  // zenith..pressure + sin/cos time-of-day
inline constexpr std::size_t kNumFeatures = kNumMetFeatures + kNumLags;

struct DatasetMeta {
    std::string station;
    Resolution resolution = Resolution::FiveMin;
    int horizon_steps = 1;
};

/// Feature matrix plus clearness-index targets for one forecast task.
/// Rows with any missing input or a nighttime target are dropped.
struct SupervisedDataset {
    Matrix features;  // n x kNumFeatures
    std::vector<double> targets_k;
    std::vector<double> targets_e_ext;
    std::vector<double> target_ghi;  // == targets_k * targets_e_ext
    std::vector<UtcMinute> base_times;
    std::vector<UtcMinute> target_times;
    std::vector<std::size_t> base_index;  // into the source KSeries
    DatasetMeta meta;

    std::size_t size() const { return targets_k.size(); }
};

/// Columns of the feature matrix, in order: zenith, temp, rh, wind speed,
/// wind direction, pressure, sin/cos of fractional day, then clearness-index
/// lags at t, t-1, ..., t-4 steps (nighttime lags contribute 0).
SupervisedDataset build_dataset(const KSeries& series, int horizon_steps,
                                const IngestOptions& opts = {});

}  // namespace solarcast
