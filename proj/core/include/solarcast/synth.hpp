#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "solarcast/surfrad.hpp"

namespace solarcast {

/// Parameters for the deterministic synthetic station archive used by the
/// bundled sample dataset and the test suites. Sky conditions follow a
/// per-day weather regime with an AR(1) clearness-index process, so lagged
/// inputs carry real signal.
struct SynthOptions {
    std::string station = "Bondville";
    std::string code = "bon";
    double latitude = 40.05;
    double longitude = -88.37;
    std::vector<int> years = {2016, 2017, 2018};
    int start_month = 6;
    int days_per_year = 30;
    std::uint64_t seed = 42;
};

/// One synthesized day at 5-minute cadence (288 rows).
RecordSeries synth_day(const SynthOptions& opts, int year, int month, int day,
                       std::uint64_t day_seed);

/// Writes data_dir/<code>/<year>/<code><yy><jjj>.dat for each configured day.
/// Returns the written file paths in order.
std::vector<std::string> write_sample_archive(const std::string& data_dir,
                                              const SynthOptions& opts = {});

}  // namespace solarcast
