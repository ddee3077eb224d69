#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>

#include <json.hpp>

#include "solarcast/harness.hpp"

namespace solarcast {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char chunk[8192];
    while (in.read(chunk, sizeof chunk) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<std::uint8_t>(chunk[i]);
            h *= 0x100000001b3ULL;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

void write_rows_csv(const EvaluationReport& report, const fs::path& path) {
    auto out = open_out(path);
    out << "station,resolution,horizon,model,calibrator,repeat,n,mean_crps,"
           "calibration_error,sharpness";
    const auto levels = default_levels();
    for (double p : levels) {
        char buf[16];
        std::snprintf(buf, sizeof buf, ",cov_p%02d", static_cast<int>(p * 100 + 0.5));
        out << buf;
    }
    out << "\n";
    for (const ReportRow& r : report.rows) {
        out << r.station << ',' << to_string(r.resolution) << ',' << r.horizon << ','
            << r.model << ',' << r.calibrator << ',' << r.repeat << ',' << r.record.n << ','
            << format_double(r.record.mean_crps) << ','
            << format_double(r.record.calibration_error) << ','
            << format_double(r.record.sharpness);
        for (const auto& [p, cov] : r.record.level_curve) out << ',' << format_double(cov);
        out << "\n";
    }
}

void write_summary_csv(const EvaluationReport& report, const fs::path& path) {
    // Table shape: one row per (station, model), one CRPS column per
    // calibrator, averaged over horizons and repeats.
    std::vector<std::string> calibs;
    for (const auto& c : kAllCalibrators) {
        for (const ReportRow& r : report.rows)
            if (r.calibrator == c) {
                calibs.push_back(c);
                break;
            }
    }

    struct Acc {
        double crps = 0.0, cal = 0.0, sharp = 0.0;
        std::size_t n = 0;
    };
    std::map<std::pair<std::string, std::string>, std::map<std::string, Acc>> cells;
    for (const ReportRow& r : report.rows) {
        Acc& a = cells[{r.station, r.model}][r.calibrator];
        a.crps += r.record.mean_crps;
        a.cal += r.record.calibration_error;
        a.sharp += r.record.sharpness;
        ++a.n;
    }

    auto out = open_out(path);
    out << "station,model";
    for (const auto& c : calibs)
        out << ",crps_" << c << ",calibration_" << c << ",sharpness_" << c;
    out << "\n";
    for (const auto& [key, by_cal] : cells) {
        out << key.first << ',' << key.second;
        for (const auto& c : calibs) {
            const auto it = by_cal.find(c);
            if (it == by_cal.end() || it->second.n == 0) {
                out << ",,,";
                continue;
            }
            const Acc& a = it->second;
            const double dn = static_cast<double>(a.n);
            out << ',' << format_double(a.crps / dn) << ',' << format_double(a.cal / dn)
                << ',' << format_double(a.sharp / dn);
        }
        out << "\n";
    }
}

void write_horizon_csv(const EvaluationReport& report, const fs::path& path) {
    struct Acc {
        double crps = 0.0;
        std::size_t n = 0;
    };
    std::map<std::pair<int, std::string>, Acc> cells;
    for (const ReportRow& r : report.rows) {
        if (r.calibrator != "none") continue;
        Acc& a = cells[{r.horizon, r.model}];
        a.crps += r.record.mean_crps;
        ++a.n;
    }
    auto out = open_out(path);
    out << "resolution,horizon,model,mean_crps\n";
    for (const auto& [key, a] : cells)
        out << to_string(report.config.resolution) << ',' << key.first << ',' << key.second
            << ',' << format_double(a.crps / static_cast<double>(a.n)) << "\n";
}

void write_fan_csv(const EvaluationReport& report, const fs::path& path) {
    auto out = open_out(path);
    out << "timestamp,ghi";
    for (int d = 1; d <= 9; ++d) out << ",q" << d * 10;
    out << "\n";
    for (const FanPoint& p : report.fan_window) {
        out << to_iso8601(p.t) << ',' << format_double(p.ghi);
        for (double q : p.quantiles) out << ',' << format_double(q);
        out << "\n";
    }
}

void write_manifest(const EvaluationReport& report, const fs::path& path) {
    const ExperimentConfig& c = report.config;
    json j;
    j["format_version"] = 1;
    j["config"] = {{"stations", c.stations},
                   {"data_dir", c.data_dir},
                   {"clearsky_csv", c.clearsky_csv},
                   {"resolution", to_string(c.resolution)},
                   {"horizons", c.horizons},
                   {"models", c.models},
                   {"calibrators", c.calibrators},
                   {"train_year", c.train_year},
                   {"cal_year", c.cal_year},
                   {"test_year", c.test_year},
                   {"repeats", c.repeats},
                   {"sample_size", c.sample_size},
                   {"seed", c.seed},
                   {"ngb_estimators", c.ngb_estimators},
                   {"ngb_learning_rate", c.ngb_learning_rate},
                   {"ngb_max_depth", c.ngb_max_depth},
                   {"ngb_min_samples_leaf", c.ngb_min_samples_leaf},
                   {"ngb_minibatch_frac", c.effective_minibatch_frac()},
                   {"mcm_states", c.mcm_states},
                   {"peen_min_members", c.effective_peen_min_members()},
                   {"k_cap", c.ingest.k_cap},
                   {"daytime_threshold", c.ingest.daytime_threshold},
                   {"solar_constant", c.ingest.solar_constant}};
    j["inputs"] = report.input_hashes;
    j["row_count"] = report.rows.size();
    j["code_version"] = "solarcast 0.1.0";
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

}  // namespace

void emit_report(const EvaluationReport& report, const std::string& out_dir) {
    if (report.rows.empty()) throw DataError("emit_report: empty report");
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    write_rows_csv(report, dir / "rows.csv");
    write_summary_csv(report, dir / "summary.csv");
    write_horizon_csv(report, dir / "crps_by_horizon.csv");
    write_manifest(report, dir / "manifest.json");
    if (!report.fan_window.empty()) write_fan_csv(report, dir / "fan.csv");
}

}  // namespace solarcast
