#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "solarcast/common.hpp"
#include "solarcast/dataset.hpp"
#include "solarcast/metrics.hpp"

namespace solarcast {

struct MissingData : DataError {
    using DataError::DataError;
};
struct ConfigInvalid : ConfigError {
    using ConfigError::ConfigError;
};

inline const std::vector<std::string> kAllModels = {"ngboost", "chp", "peen", "mcm"};
inline const std::vector<std::string> kAllCalibrators = {"none", "mle", "crude", "kuleshov"};

struct ExperimentConfig {
    std::vector<std::string> stations;  // station directory codes under data_dir
    std::string data_dir;
    std::string clearsky_csv;  // empty: computed extraterrestrial normalizer
    Resolution resolution = Resolution::FiveMin;
    std::vector<int> horizons;  // minutes (intra-hourly) or hours (hourly)
    std::vector<std::string> models = kAllModels;
    std::vector<std::string> calibrators = kAllCalibrators;
    int train_year = 2016;
    int cal_year = 2017;
    int test_year = 2018;
    int repeats = 10;
    int sample_size = 2000;
    std::uint64_t seed = 0;
    int jobs = 1;

    // NGBoost knobs; minibatch_frac < 0 selects the resolution default
    // (1.0 intra-hourly, 0.5 hourly).
    int ngb_estimators = 500;
    double ngb_learning_rate = 0.01;
    int ngb_max_depth = 3;
    int ngb_min_samples_leaf = 1;
    double ngb_minibatch_frac = -1.0;

    int mcm_states = 30;
    int peen_min_members = -1;  // < 0: 6 intra-hourly, 2 hourly

    IngestOptions ingest;

    void validate() const;
    int horizon_steps(int horizon) const;
    double effective_minibatch_frac() const;
    std::size_t effective_peen_min_members() const;
};

/// Flat `key = value` config file; '#' starts a comment; lists are
/// comma-separated. Unknown keys are an error.
ExperimentConfig load_config(const std::string& path);
void apply_config_line(ExperimentConfig& cfg, const std::string& key,
                       const std::string& value);

struct ReportRow {
    std::string station;
    Resolution resolution = Resolution::FiveMin;
    int horizon = 0;  // config units (minutes or hours)
    std::string model;
    std::string calibrator;
    int repeat = 0;
    VerificationRecord record;
};

struct FanPoint {
    UtcMinute t;
    double ghi = 0.0;                  // observed, W/m^2
    std::vector<double> quantiles;     // deciles q10..q90, W/m^2
};

struct EvaluationReport {
    ExperimentConfig config;
    std::vector<ReportRow> rows;         // canonical sort order
    std::vector<FanPoint> fan_window;    // first NGBoost test window, for plotting
    std::map<std::string, std::string> input_hashes;  // path -> fnv1a64 hex
};

EvaluationReport run_experiment(const ExperimentConfig& config);

/// Writes rows.csv, summary.csv, crps_by_horizon.csv, manifest.json and, when
/// a fan window was captured, fan.csv.
void emit_report(const EvaluationReport& report, const std::string& out_dir);

/// Shortest-round-trip decimal text for a double; stable across runs.
std::string format_double(double v);

/// FNV-1a 64-bit over a file's bytes, lowercase hex.
std::string hash_file(const std::string& path);

}  // namespace solarcast
