#include "solarcast/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "solarcast/baselines.hpp"
#include "solarcast/calibrate.hpp"
#include "solarcast/ngboost.hpp"
#include "solarcast/rng.hpp"
#include "solarcast/solar.hpp"

namespace solarcast {

namespace fs = std::filesystem;

void ExperimentConfig::validate() const {
    if (stations.empty()) throw ConfigInvalid("no stations configured");
    if (data_dir.empty()) throw ConfigInvalid("data_dir is required");
    if (horizons.empty()) throw ConfigInvalid("no horizons configured");
    if (train_year == cal_year || train_year == test_year || cal_year == test_year)
        throw ConfigInvalid("train/cal/test years must be distinct");
    if (repeats < 1) throw ConfigInvalid("repeats must be >= 1");
    if (sample_size < 1) throw ConfigInvalid("sample_size must be >= 1");
    if (jobs < 1) throw ConfigInvalid("jobs must be >= 1");
    for (int h : horizons) {
        if (resolution == Resolution::FiveMin) {
            if (h < 5 || h > 60 || h % 5 != 0)
                throw ConfigInvalid("intra-hourly horizons must be 5..60 in steps of 5");
        } else if (h < 1 || h > 6) {
            throw ConfigInvalid("hourly horizons must be 1..6");
        }
    }
    for (const auto& m : models)
        if (std::find(kAllModels.begin(), kAllModels.end(), m) == kAllModels.end())
            throw ConfigInvalid("unknown model: " + m);
    for (const auto& c : calibrators)
        if (std::find(kAllCalibrators.begin(), kAllCalibrators.end(), c) ==
            kAllCalibrators.end())
            throw ConfigInvalid("unknown calibrator: " + c);
    if (models.empty()) throw ConfigInvalid("no models configured");
}

int ExperimentConfig::horizon_steps(int horizon) const {
    return resolution == Resolution::FiveMin ? horizon / 5 : horizon;
}

double ExperimentConfig::effective_minibatch_frac() const {
    if (ngb_minibatch_frac > 0.0) return ngb_minibatch_frac;
    return resolution == Resolution::FiveMin ? 1.0 : 0.5;
}

std::size_t ExperimentConfig::effective_peen_min_members() const {
    if (peen_min_members >= 0) return static_cast<std::size_t>(peen_min_members);
    return resolution == Resolution::FiveMin ? 6 : 2;
}

namespace {

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

std::vector<int> split_int_list(const std::string& value) {
    std::vector<int> out;
    for (const auto& s : split_list(value)) out.push_back(std::stoi(s));
    return out;
}

}  // namespace

void apply_config_line(ExperimentConfig& cfg, const std::string& key,
                       const std::string& value) {
    if (key == "stations") cfg.stations = split_list(value);
    else if (key == "data_dir") cfg.data_dir = value;
    else if (key == "clearsky_csv") cfg.clearsky_csv = value;
    else if (key == "resolution") cfg.resolution = resolution_from_string(value);
    else if (key == "horizons") cfg.horizons = split_int_list(value);
    else if (key == "models") cfg.models = split_list(value);
    else if (key == "calibrators") cfg.calibrators = split_list(value);
    else if (key == "train_year") cfg.train_year = std::stoi(value);
    else if (key == "cal_year") cfg.cal_year = std::stoi(value);
    else if (key == "test_year") cfg.test_year = std::stoi(value);
    else if (key == "repeats") cfg.repeats = std::stoi(value);
    else if (key == "sample_size") cfg.sample_size = std::stoi(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "jobs") cfg.jobs = std::stoi(value);
    else if (key == "ngb_estimators") cfg.ngb_estimators = std::stoi(value);
    else if (key == "ngb_learning_rate") cfg.ngb_learning_rate = std::stod(value);
    else if (key == "ngb_max_depth") cfg.ngb_max_depth = std::stoi(value);
    else if (key == "ngb_min_samples_leaf") cfg.ngb_min_samples_leaf = std::stoi(value);
    else if (key == "ngb_minibatch_frac") cfg.ngb_minibatch_frac = std::stod(value);
    else if (key == "mcm_states") cfg.mcm_states = std::stoi(value);
    else if (key == "peen_min_members") cfg.peen_min_members = std::stoi(value);
    else if (key == "k_cap") cfg.ingest.k_cap = std::stod(value);
    else if (key == "daytime_threshold") cfg.ingest.daytime_threshold = std::stod(value);
    else if (key == "solar_constant") cfg.ingest.solar_constant = std::stod(value);
    else throw ConfigInvalid("unknown config key: " + key);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (eq == std::string::npos)
            throw ConfigInvalid("config line " + std::to_string(lineno) + ": expected key = value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

namespace {

struct StationData {
    std::string station;
    KSeries train, cal, test;
    // Datasets per horizon (config units), built once and shared read-only.
    std::map<int, SupervisedDataset> train_ds, cal_ds, test_ds;
};

KSeries load_station_year(const ExperimentConfig& cfg, const std::string& station, int year,
                          std::map<std::string, std::string>& hashes) {
    const fs::path dir = fs::path(cfg.data_dir) / station / std::to_string(year);
    if (!fs::is_directory(dir))
        throw MissingData("no data directory " + dir.string());

    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw MissingData("no data files under " + dir.string());

    std::vector<RecordSeries> days;
    days.reserve(files.size());
    for (const auto& f : files) {
        days.push_back(parse_surfrad_file(f.string()));
        hashes[f.string()] = hash_file(f.string());
    }

    std::unique_ptr<ClearSkySeries> external;
    if (!cfg.clearsky_csv.empty())
        external = std::make_unique<ClearSkySeries>(load_clearsky_csv(cfg.clearsky_csv));

    KSeries five = build_kseries(days, external.get(), cfg.ingest);
    five.station = station;
    if (cfg.resolution == Resolution::Hourly) {
        KSeries hourly = aggregate_hourly(five, cfg.ingest);
        hourly.station = station;
        return hourly;
    }
    return five;
}

struct SampledSet {
    std::vector<DistPtr> predictions;  // clearness space
    std::vector<double> obs_k;
    std::vector<double> e_ext;
    std::vector<std::size_t> kept;  // dataset row index per prediction
};

constexpr std::size_t kLagFeatureOffset = kNumMetFeatures;  // lag0 column

/// Model-specific predictive distributions for the given dataset rows.
/// Rows a baseline cannot forecast (empty bucket, short history) are skipped.
struct Forecaster {
    const ExperimentConfig& cfg;
    const std::string& model;
    const NGBoostModel* ngb = nullptr;
    const ChpModel* chp = nullptr;
    const McmModel* mcm = nullptr;
    const KSeries* series = nullptr;  // series the dataset was built from

    SampledSet predict(const SupervisedDataset& ds, const std::vector<std::size_t>& rows) const {
        SampledSet out;
        out.predictions.reserve(rows.size());

        if (model == "ngboost") {
            Matrix sub(rows.size(), ds.features.cols());
            for (std::size_t i = 0; i < rows.size(); ++i)
                std::copy(ds.features.row(rows[i]), ds.features.row(rows[i]) + ds.features.cols(),
                          sub.row(i));
            out.predictions = ngboost_predict(*ngb, sub);
            for (std::size_t r : rows) {
                out.obs_k.push_back(ds.targets_k[r]);
                out.e_ext.push_back(ds.targets_e_ext[r]);
                out.kept.push_back(r);
            }
            return out;
        }

        for (std::size_t r : rows) {
            DistPtr pred;
            try {
                if (model == "chp") {
                    pred = chp_forecast(*chp, ds.target_times[r]);
                } else if (model == "peen") {
                    pred = peen_forecast(*series, ds.base_index[r], kPeenWindowMinutes,
                                         cfg.effective_peen_min_members());
                } else if (model == "mcm") {
                    pred = mcm_forecast(*mcm, ds.features(r, kLagFeatureOffset));
                } else {
                    throw ConfigInvalid("unknown model: " + model);
                }
            } catch (const EmptyBucket&) {
                continue;
            } catch (const InsufficientHistory&) {
                continue;
            }
            out.predictions.push_back(std::move(pred));
            out.obs_k.push_back(ds.targets_k[r]);
            out.e_ext.push_back(ds.targets_e_ext[r]);
            out.kept.push_back(r);
        }
        return out;
    }
};

struct Task {
    std::size_t station_idx;
    int horizon;
    std::string model;
    int repeat;
};

struct TaskOutput {
    std::vector<ReportRow> rows;
    std::vector<FanPoint> fan;
};

std::vector<DistPtr> wrap_calibrated(const std::string& calibrator,
                                     const std::vector<DistPtr>& cal_preds,
                                     const std::vector<double>& cal_obs,
                                     const std::vector<DistPtr>& test_preds) {
    if (calibrator == "mle") {
        const MleCalibrator mle = MleCalibrator::fit(cal_preds, cal_obs);
        std::vector<DistPtr> out;
        out.reserve(test_preds.size());
        for (const auto& m : gaussian_moments(test_preds)) out.push_back(mle.apply(m));
        return out;
    }
    if (calibrator == "crude") {
        auto crude = std::make_shared<const CrudeCalibrator>(
            CrudeCalibrator::fit(cal_preds, cal_obs));
        std::vector<DistPtr> out;
        out.reserve(test_preds.size());
        for (const auto& m : gaussian_moments(test_preds))
            out.push_back(make_crude_calibrated(crude, m));
        return out;
    }
    if (calibrator == "kuleshov") {
        auto kul = std::make_shared<const KuleshovCalibrator>(
            KuleshovCalibrator::fit(cal_preds, cal_obs));
        std::vector<DistPtr> out;
        out.reserve(test_preds.size());
        for (const auto& p : test_preds) out.push_back(make_kuleshov_calibrated(kul, p));
        return out;
    }
    throw ConfigInvalid("unknown calibrator: " + calibrator);
}

TaskOutput run_task(const ExperimentConfig& cfg, const StationData& sd, const Task& task,
                    bool capture_fan) {
    TaskOutput out;
    const int steps = cfg.horizon_steps(task.horizon);
    const SupervisedDataset& train = sd.train_ds.at(task.horizon);
    const SupervisedDataset& cal = sd.cal_ds.at(task.horizon);
    const SupervisedDataset& test = sd.test_ds.at(task.horizon);

    const std::string tag = sd.station + "|" + to_string(cfg.resolution) + "|" +
                            std::to_string(task.horizon) + "|" + task.model + "|" +
                            std::to_string(task.repeat);
    const std::uint64_t task_seed = mix_seed(cfg.seed, tag);

    // Fit.
    NGBoostModel ngb;
    ChpModel chp;
    McmModel mcm;
    Forecaster fc{cfg, task.model};
    if (task.model == "ngboost") {
        NGBoostConfig nc;
        nc.n_estimators = cfg.ngb_estimators;
        nc.learning_rate = cfg.ngb_learning_rate;
        nc.max_depth = cfg.ngb_max_depth;
        nc.min_samples_leaf = cfg.ngb_min_samples_leaf;
        nc.minibatch_frac = cfg.effective_minibatch_frac();
        nc.seed = mix_seed(task_seed, "fit");
        ngb = ngboost_fit(train, nc);
        fc.ngb = &ngb;
    } else if (task.model == "chp") {
        chp = chp_fit(sd.train);
        fc.chp = &chp;
    } else if (task.model == "mcm") {
        mcm = mcm_fit(sd.train, cfg.mcm_states, steps);
        fc.mcm = &mcm;
    }

    // Calibration and test samples, without replacement.
    Rng cal_rng(mix_seed(task_seed, "cal_sample"));
    Rng test_rng(mix_seed(task_seed, "test_sample"));
    const auto cal_rows = cal_rng.sample_without_replacement(
        cal.size(), std::min<std::size_t>(cal.size(), cfg.sample_size));
    const auto test_rows = test_rng.sample_without_replacement(
        test.size(), std::min<std::size_t>(test.size(), cfg.sample_size));

    fc.series = &sd.cal;
    const SampledSet cal_set = fc.predict(cal, cal_rows);
    fc.series = &sd.test;
    const SampledSet test_set = fc.predict(test, test_rows);
    if (test_set.predictions.empty())
        throw MissingData("no forecastable test rows for " + tag);

    std::vector<std::string> calibs = {"none"};
    if (task.model == "ngboost") {
        for (const auto& c : cfg.calibrators)
            if (c != "none") calibs.push_back(c);
    }

    for (const std::string& calibrator : calibs) {
        std::vector<DistPtr> preds;
        if (calibrator == "none") {
            preds = test_set.predictions;
        } else {
            if (cal_set.predictions.empty())
                throw MissingData("no calibration rows for " + tag);
            preds = wrap_calibrated(calibrator, cal_set.predictions, cal_set.obs_k,
                                    test_set.predictions);
        }
        ReportRow row;
        row.station = sd.station;
        row.resolution = cfg.resolution;
        row.horizon = task.horizon;
        row.model = task.model;
        row.calibrator = calibrator;
        row.repeat = task.repeat;
        row.record = verify(preds, test_set.obs_k, test_set.e_ext);
        out.rows.push_back(std::move(row));
    }

    if (capture_fan) {
        // Contiguous prefix of the test period, decile bands in W/m^2.
        const std::size_t window = std::min<std::size_t>(test.size(), 600);
        std::vector<std::size_t> rows(window);
        for (std::size_t i = 0; i < window; ++i) rows[i] = i;
        fc.series = &sd.test;
        const SampledSet win = fc.predict(test, rows);
        for (std::size_t i = 0; i < win.predictions.size(); ++i) {
            FanPoint p;
            p.t = test.target_times[win.kept[i]];
            p.ghi = win.obs_k[i] * win.e_ext[i];
            const DistPtr scaled = win.predictions[i]->affine(win.e_ext[i], 0.0);
            for (int d = 1; d <= 9; ++d)
                p.quantiles.push_back(scaled->quantile(d / 10.0));
            out.fan.push_back(std::move(p));
        }
    }
    return out;
}

}  // namespace

EvaluationReport run_experiment(const ExperimentConfig& config) {
    config.validate();

    EvaluationReport report;
    report.config = config;

    // Load all station data up front; shared immutable across workers.
    std::vector<StationData> stations;
    for (const auto& station : config.stations) {
        StationData sd;
        sd.station = station;
        sd.train = load_station_year(config, station, config.train_year, report.input_hashes);
        sd.cal = load_station_year(config, station, config.cal_year, report.input_hashes);
        sd.test = load_station_year(config, station, config.test_year, report.input_hashes);
        for (int h : config.horizons) {
            const int steps = config.horizon_steps(h);
            sd.train_ds.emplace(h, build_dataset(sd.train, steps, config.ingest));
            sd.cal_ds.emplace(h, build_dataset(sd.cal, steps, config.ingest));
            sd.test_ds.emplace(h, build_dataset(sd.test, steps, config.ingest));
        }
        stations.push_back(std::move(sd));
    }

    std::vector<Task> tasks;
    for (std::size_t si = 0; si < stations.size(); ++si)
        for (int h : config.horizons)
            for (const auto& model : config.models)
                for (int r = 0; r < config.repeats; ++r)
                    tasks.push_back({si, h, model, r});

    // The fan window comes from the first NGBoost task, or the first task
    // overall when NGBoost is not configured.
    std::size_t fan_task = 0;
    for (std::size_t i = 0; i < tasks.size(); ++i)
        if (tasks[i].model == "ngboost" && tasks[i].repeat == 0) {
            fan_task = i;
            break;
        }

    std::vector<TaskOutput> outputs(tasks.size());
    std::vector<std::string> failures(tasks.size());
    std::atomic<std::size_t> next{0};
    const int workers = std::min<int>(config.jobs, static_cast<int>(tasks.size()));

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                outputs[i] =
                    run_task(config, stations[tasks[i].station_idx], tasks[i], i == fan_task);
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& f : failures)
        if (!f.empty()) throw DataError("task failed: " + f);

    // Canonical order: task enumeration order is already deterministic, and
    // outputs are gathered by index, so scheduling cannot reorder rows.
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        for (auto& row : outputs[i].rows) report.rows.push_back(std::move(row));
        if (i == fan_task) report.fan_window = std::move(outputs[i].fan);
    }
    return report;
}

}  // namespace solarcast
