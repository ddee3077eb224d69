#include "solarcast/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace solarcast {

namespace {
constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

bool present(double v) { return !std::isnan(v); }
}  // namespace

std::string to_string(Resolution r) {
    return r == Resolution::FiveMin ? "intra_hourly" : "hourly";
}

Resolution resolution_from_string(const std::string& s) {
    if (s == "intra_hourly" || s == "5min" || s == "intra") return Resolution::FiveMin;
    if (s == "hourly") return Resolution::Hourly;
    throw ConfigError("unknown resolution: " + s);
}

std::int64_t step_minutes(Resolution r) { return r == Resolution::FiveMin ? 5 : 60; }

std::optional<std::size_t> KSeries::find(UtcMinute t) const {
    const auto it = std::lower_bound(points.begin(), points.end(), t,
                                     [](const KPoint& p, UtcMinute v) { return p.t < v; });
    if (it == points.end() || it->t != t) return std::nullopt;
    return static_cast<std::size_t>(it - points.begin());
}

KSeries build_kseries(const std::vector<RecordSeries>& days, const ClearSkySeries* external,
                      const IngestOptions& opts) {
    KSeries out;
    out.resolution = Resolution::FiveMin;

    std::unordered_map<std::int64_t, double> csv;
    if (external != nullptr) {
        if (external->timestamps.size() != external->e_ext.size())
            throw MisalignedClearSky("clear-sky series length mismatch");
        for (std::size_t i = 0; i < external->timestamps.size(); ++i)
            csv.emplace(external->timestamps[i].value, external->e_ext[i]);
    }

    UtcMinute prev{INT64_MIN};
    for (const RecordSeries& day : days) {
        if (out.station.empty()) out.station = day.station;
        for (const Record& rec : day.records) {
            if (rec.timestamp <= prev)
                throw DataError("daily series out of order at " + to_iso8601(rec.timestamp));
            prev = rec.timestamp;

            KPoint p;
            p.t = rec.timestamp;
            p.zenith = rec.zenith_deg;
            p.temp = rec.temp_c;
            p.rh = rec.rh_pct;
            p.wind_speed = rec.wind_speed;
            p.wind_dir = rec.wind_dir_deg;
            p.pressure = rec.pressure_mb;
            p.ghi = rec.ghi;

            if (external != nullptr) {
                const auto it = csv.find(rec.timestamp.value);
                if (it == csv.end())
                    throw MisalignedClearSky("no clear-sky value at " +
                                             to_iso8601(rec.timestamp));
                p.e_ext = it->second;
            } else {
                p.e_ext = present(rec.zenith_deg)
                              ? compute_extraterrestrial(rec.timestamp, rec.zenith_deg,
                                                         opts.solar_constant)
                              : 0.0;
            }

            p.daytime = p.e_ext > opts.daytime_threshold;
            if (p.daytime && present(p.ghi)) {
                const auto k = clearness_index(p.ghi, p.e_ext, opts.k_cap,
                                               opts.daytime_threshold);
                if (k) p.k = *k;
            }
            out.points.push_back(p);
        }
    }
    return out;
}

KSeries aggregate_hourly(const KSeries& five_min, const IngestOptions& opts) {
    KSeries out;
    out.station = five_min.station;
    out.resolution = Resolution::Hourly;

    // Group by hour-ending timestamp: sample at t belongs to the bucket
    // ending at the next top of hour (t itself when t is on the hour).
    std::size_t i = 0;
    const auto& pts = five_min.points;
    const std::size_t expected = 60 / step_minutes(Resolution::FiveMin);
    while (i < pts.size()) {
        const std::int64_t t = pts[i].t.value;
        const std::int64_t hour_end = (t % 60 == 0) ? t : (t / 60 + 1) * 60;
        std::size_t j = i;
        double sum_ghi = 0.0, sum_eext = 0.0;
        double sum_zen = 0.0, sum_temp = 0.0, sum_rh = 0.0, sum_ws = 0.0, sum_wd = 0.0,
               sum_pr = 0.0;
        std::size_t n_ghi = 0, n_zen = 0, n_temp = 0, n_rh = 0, n_ws = 0, n_wd = 0, n_pr = 0;
        while (j < pts.size() && pts[j].t.value > hour_end - 60 && pts[j].t.value <= hour_end) {
            const KPoint& p = pts[j];
            if (present(p.ghi)) {
                sum_ghi += p.ghi;
                sum_eext += p.e_ext;
                ++n_ghi;
            }
            if (present(p.zenith)) { sum_zen += p.zenith; ++n_zen; }
            if (present(p.temp)) { sum_temp += p.temp; ++n_temp; }
            if (present(p.rh)) { sum_rh += p.rh; ++n_rh; }
            if (present(p.wind_speed)) { sum_ws += p.wind_speed; ++n_ws; }
            if (present(p.wind_dir)) { sum_wd += p.wind_dir; ++n_wd; }
            if (present(p.pressure)) { sum_pr += p.pressure; ++n_pr; }
            ++j;
        }
        if (n_ghi * 2 >= expected) {
            KPoint h;
            h.t = UtcMinute{hour_end};
            h.ghi = sum_ghi / n_ghi;
            h.e_ext = sum_eext / n_ghi;
            h.daytime = h.e_ext > opts.daytime_threshold;
            if (h.daytime) {
                const auto k = clearness_index(h.ghi, h.e_ext, opts.k_cap,
                                               opts.daytime_threshold);
                if (k) h.k = *k;
            }
            if (n_zen) h.zenith = sum_zen / n_zen;
            if (n_temp) h.temp = sum_temp / n_temp;
            if (n_rh) h.rh = sum_rh / n_rh;
            if (n_ws) h.wind_speed = sum_ws / n_ws;
            if (n_wd) h.wind_dir = sum_wd / n_wd;
            if (n_pr) h.pressure = sum_pr / n_pr;
            out.points.push_back(h);
        }
        i = j;
    }
    return out;
}

SupervisedDataset build_dataset(const KSeries& series, int horizon_steps,
                                const IngestOptions& opts) {
    if (horizon_steps < 1) throw ConfigError("horizon must be at least one step");
    const std::int64_t step = step_minutes(series.resolution);

    std::unordered_map<std::int64_t, std::size_t> index;
    index.reserve(series.points.size());
    for (std::size_t i = 0; i < series.points.size(); ++i)
        index.emplace(series.points[i].t.value, i);

    SupervisedDataset ds;
    ds.meta.station = series.station;
    ds.meta.resolution = series.resolution;
    ds.meta.horizon_steps = horizon_steps;

    std::vector<double> feature_rows;
    for (std::size_t i = 0; i < series.points.size(); ++i) {
        const KPoint& base = series.points[i];

        const auto tgt_it = index.find(base.t.value + horizon_steps * step);
        if (tgt_it == index.end()) continue;
        const KPoint& target = series.points[tgt_it->second];
        if (!target.daytime || !present(target.k)) continue;

        if (!present(base.zenith) || !present(base.temp) || !present(base.rh) ||
            !present(base.wind_speed) || !present(base.wind_dir) || !present(base.pressure))
            continue;

        // Lags may predate sunrise; a nighttime lag contributes zero.
        double lags[kNumLags];
        bool lags_ok = true;
        for (std::size_t l = 0; l < kNumLags; ++l) {
            const auto it = index.find(base.t.value - static_cast<std::int64_t>(l) * step);
            if (it == index.end()) {
                lags_ok = false;
                break;
            }
            const KPoint& p = series.points[it->second];
            if (p.daytime && !present(p.k)) {  // daytime but GHI missing: drop row
                lags_ok = false;
                break;
            }
            lags[l] = p.daytime ? p.k : 0.0;
        }
        if (!lags_ok) continue;

        const double tod = fractional_day(base.t);
        feature_rows.push_back(base.zenith);
        feature_rows.push_back(base.temp);
        feature_rows.push_back(base.rh);
        feature_rows.push_back(base.wind_speed);
        feature_rows.push_back(base.wind_dir);
        feature_rows.push_back(base.pressure);
        feature_rows.push_back(std::sin(kTwoPi * tod));
        feature_rows.push_back(std::cos(kTwoPi * tod));
        for (double l : lags) feature_rows.push_back(l);

        ds.targets_k.push_back(target.k);
        ds.targets_e_ext.push_back(target.e_ext);
        ds.target_ghi.push_back(target.k * target.e_ext);
        ds.base_times.push_back(base.t);
        ds.target_times.push_back(target.t);
        ds.base_index.push_back(i);
    }

    if (ds.targets_k.empty()) throw EmptyDataset("all rows filtered out");

    const std::size_t n = ds.targets_k.size();
    ds.features = Matrix(n, kNumFeatures);
    std::copy(feature_rows.begin(), feature_rows.end(), ds.features.data().begin());
    return ds;
}

}  // namespace solarcast
