// solarcast command-line interface: experiment runner, plotting, data checks.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "solarcast/harness.hpp"
#include "solarcast/plots.hpp"
#include "solarcast/surfrad.hpp"
#include "solarcast/synth.hpp"

namespace fs = std::filesystem;
using namespace solarcast;

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& stations,
            const std::string& resolution, const std::string& out_dir, long long seed,
            int jobs) {
    ExperimentConfig cfg =
        config_path.empty() ? ExperimentConfig{} : load_config(config_path);
    if (!stations.empty()) cfg.stations = stations;
    if (!resolution.empty()) cfg.resolution = resolution_from_string(resolution);
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (jobs > 0) cfg.jobs = jobs;
    if (cfg.data_dir.empty()) {
        if (const char* env = std::getenv("SOLARCAST_DATA_DIR")) cfg.data_dir = env;
    }

    const EvaluationReport report = run_experiment(cfg);
    emit_report(report, out_dir);
    std::cout << "wrote " << report.rows.size() << " rows to " << out_dir << "\n";
    return 0;
}

int cmd_plot_fan(const std::string& in_path, const std::string& out_path) {
    std::ifstream in(in_path);
    if (!in) throw IoError("cannot open " + in_path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("timestamp,ghi", 0) != 0)
        throw ParseError("expected fan csv with header timestamp,ghi,q10..q90");
    std::vector<FanPoint> window;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 11) throw ParseError("fan csv: expected 11 columns");
        FanPoint p;
        p.t = parse_iso8601(cells[0]);
        p.ghi = std::stod(cells[1]);
        for (int d = 0; d < 9; ++d) p.quantiles.push_back(std::stod(cells[2 + d]));
        window.push_back(std::move(p));
    }
    emit_fan_chart(window, out_path);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_plot_calibration(const std::string& in_path, const std::string& out_path) {
    std::ifstream in(in_path);
    if (!in) throw IoError("cannot open " + in_path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty rows csv");
    const auto header = split_csv_line(line);

    std::size_t first_cov = 0;
    std::vector<double> levels;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i].rfind("cov_p", 0) == 0) {
            if (first_cov == 0) first_cov = i;
            levels.push_back(std::stod(header[i].substr(5)) / 100.0);
        }
    }
    if (levels.empty()) throw ParseError("rows csv has no cov_p* columns");

    struct Acc {
        std::vector<double> sum;
        std::size_t n = 0;
    };
    std::map<std::string, Acc> groups;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        const std::string label = cells.at(3) + "+" + cells.at(4);
        Acc& a = groups[label];
        if (a.sum.empty()) a.sum.assign(levels.size(), 0.0);
        for (std::size_t i = 0; i < levels.size(); ++i)
            a.sum[i] += std::stod(cells.at(first_cov + i));
        ++a.n;
    }
    if (groups.empty()) throw ParseError("rows csv has no data rows");

    std::vector<NamedCurve> curves;
    for (const auto& [label, a] : groups) {
        NamedCurve c;
        c.label = label;
        for (std::size_t i = 0; i < levels.size(); ++i)
            c.points.emplace_back(levels[i], a.sum[i] / static_cast<double>(a.n));
        curves.push_back(std::move(c));
    }
    emit_calibration_curves(curves, out_path);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_validate(const std::string& data_dir) {
    if (!fs::is_directory(data_dir)) {
        std::cerr << "not a directory: " << data_dir << "\n";
        return 1;
    }
    std::size_t files = 0, records = 0, bad_rows = 0, bad_files = 0;
    for (const auto& e : fs::recursive_directory_iterator(data_dir)) {
        if (!e.is_regular_file() || e.path().extension() != ".dat") continue;
        ++files;
        try {
            const RecordSeries s = parse_surfrad_file(e.path().string());
            records += s.records.size();
            bad_rows += s.errors.size();
            for (const RowError& err : s.errors)
                std::cout << e.path().string() << ":" << err.line << ": " << err.message
                          << "\n";
        } catch (const std::exception& ex) {
            ++bad_files;
            std::cout << e.path().string() << ": " << ex.what() << "\n";
        }
    }
    std::cout << files << " files, " << records << " records, " << bad_rows
              << " skipped rows, " << bad_files << " unreadable files\n";
    return bad_files == 0 ? 0 : 1;
}

int cmd_gen_sample(const std::string& out_dir, int days, long long seed) {
    SynthOptions opts;
    opts.days_per_year = days;
    if (seed >= 0) opts.seed = static_cast<std::uint64_t>(seed);
    const auto written = write_sample_archive(out_dir, opts);
    std::cout << "wrote " << written.size() << " files under " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"probabilistic solar irradiance forecasting toolkit"};
    app.require_subcommand(1);

    // run
    std::string config_path, resolution, out_dir = "out";
    std::vector<std::string> stations;
    long long seed = -1;
    int jobs = 0;
    auto* run = app.add_subcommand("run", "run a benchmark experiment");
    run->add_option("--config", config_path, "config file (key = value lines)");
    run->add_option("--stations", stations, "station codes (override config)");
    run->add_option("--resolution", resolution, "intra_hourly or hourly");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--seed", seed, "experiment seed");
    run->add_option("--jobs", jobs, "worker threads");

    // plot
    std::string plot_in, plot_out = "plot.svg";
    auto* plot = app.add_subcommand("plot", "render SVG plots from run outputs");
    plot->require_subcommand(1);
    auto* plot_fan = plot->add_subcommand("fan", "fan chart from fan.csv");
    plot_fan->add_option("--in", plot_in, "fan.csv from a run")->required();
    plot_fan->add_option("--out", plot_out, "output SVG path");
    auto* plot_cal = plot->add_subcommand("calibration", "calibration curves from rows.csv");
    plot_cal->add_option("--in", plot_in, "rows.csv from a run")->required();
    plot_cal->add_option("--out", plot_out, "output SVG path");

    // validate-data
    std::string data_dir;
    auto* validate = app.add_subcommand("validate-data", "parse-check a data directory");
    validate->add_option("--data-dir", data_dir, "station data directory")->required();

    // gen-sample
    std::string gen_out = "data/sample";
    int gen_days = 30;
    long long gen_seed = -1;
    auto* gen = app.add_subcommand("gen-sample", "write the synthetic sample archive");
    gen->add_option("--out", gen_out, "output data directory");
    gen->add_option("--days", gen_days, "days per year");
    gen->add_option("--seed", gen_seed, "generator seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(config_path, stations, resolution, out_dir, seed, jobs);
        if (plot_fan->parsed()) return cmd_plot_fan(plot_in, plot_out);
        if (plot_cal->parsed()) return cmd_plot_calibration(plot_in, plot_out);
        if (validate->parsed()) return cmd_validate(data_dir);
        if (gen->parsed()) return cmd_gen_sample(gen_out, gen_days, gen_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
