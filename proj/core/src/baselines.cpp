#include "solarcast/baselines.hpp"

#include <algorithm>
#include <cmath>

namespace solarcast {

ChpModel chp_fit(const KSeries& train) {
    ChpModel model;
    model.slot_minutes = step_minutes(train.resolution);
    for (const KPoint& p : train.points) {
        if (!p.daytime || std::isnan(p.k)) continue;
        const int slot = minute_of_day(p.t) / static_cast<int>(model.slot_minutes);
        model.buckets[slot].push_back(p.k);
    }
    return model;
}

DistPtr chp_forecast(const ChpModel& model, UtcMinute target_time) {
    const int slot = minute_of_day(target_time) / static_cast<int>(model.slot_minutes);
    const auto it = model.buckets.find(slot);
    if (it == model.buckets.end() || it->second.empty())
        throw EmptyBucket("no training data at slot " + std::to_string(slot));
    return make_ensemble(it->second);
}

DistPtr peen_forecast(const KSeries& series, std::size_t base_index,
                      std::int64_t window_minutes, std::size_t min_members) {
    if (base_index >= series.points.size()) throw DataError("peen: index out of range");
    const UtcMinute t = series.points[base_index].t;

    std::vector<double> members;
    for (std::size_t i = base_index + 1; i-- > 0;) {
        const KPoint& p = series.points[i];
        if (t - p.t >= window_minutes) break;
        if (p.daytime && !std::isnan(p.k)) members.push_back(p.k);
    }
    if (members.size() < min_members)
        throw InsufficientHistory("only " + std::to_string(members.size()) +
                                  " valid values in trailing window");
    return make_ensemble(std::move(members));
}

double McmModel::row_sum(int row) const {
    double s = 0.0;
    for (int c = 0; c < n_states; ++c) s += transition[row * n_states + c];
    return s;
}

McmModel mcm_fit_sequence(const std::vector<double>& train_k, int n_states, int lag) {
    if (train_k.empty()) throw DataError("mcm: empty training sequence");
    if (n_states < 2) throw ConfigError("mcm: need at least two states");

    const auto [mn_it, mx_it] = std::minmax_element(train_k.begin(), train_k.end());
    const double lo = *mn_it, hi = *mx_it;
    if (!(hi > lo)) throw DegenerateRange("constant training sequence");

    McmModel model;
    model.n_states = n_states;
    model.edges.resize(n_states + 1);
    for (int i = 0; i <= n_states; ++i)
        model.edges[i] = lo + (hi - lo) * static_cast<double>(i) / n_states;
    model.edges.back() = hi;

    auto state_of = [&](double k) {
        if (k <= lo) return 0;
        if (k >= hi) return n_states - 1;
        int s = static_cast<int>((k - lo) / (hi - lo) * n_states);
        return std::clamp(s, 0, n_states - 1);
    };

    std::vector<double> counts(static_cast<std::size_t>(n_states) * n_states, 0.0);
    for (std::size_t i = 0; i + lag < train_k.size(); ++i) {
        const int from = state_of(train_k[i]);
        const int to = state_of(train_k[i + lag]);
        counts[from * n_states + to] += 1.0;
    }

    model.transition.resize(counts.size());
    for (int r = 0; r < n_states; ++r) {
        double total = 0.0;
        for (int c = 0; c < n_states; ++c) total += counts[r * n_states + c];
        if (total > 0.0) {
            for (int c = 0; c < n_states; ++c)
                model.transition[r * n_states + c] = counts[r * n_states + c] / total;
        } else {
            for (int c = 0; c < n_states; ++c)
                model.transition[r * n_states + c] = 1.0 / n_states;
        }
        // Renormalize exactly so row sums hold to 1e-12.
        const double s = model.row_sum(r);
        for (int c = 0; c < n_states; ++c) model.transition[r * n_states + c] /= s;
    }
    return model;
}

McmModel mcm_fit(const KSeries& train, int n_states, int horizon_steps) {
    // Pairs are counted within one calendar day; the nighttime gap between
    // days is not a transition.
    const std::int64_t step = step_minutes(train.resolution);
    std::vector<double> ks;

    // Collect daytime values with day bookkeeping for pair counting.
    struct Entry {
        std::int64_t day;
        std::int64_t t;
        double k;
    };
    std::vector<Entry> entries;
    for (const KPoint& p : train.points) {
        if (!p.daytime || std::isnan(p.k)) continue;
        entries.push_back({p.t.value / 1440, p.t.value, p.k});
        ks.push_back(p.k);
    }
    if (entries.empty()) throw DataError("mcm: no daytime training data");
    if (n_states < 2) throw ConfigError("mcm: need at least two states");

    const auto [mn_it, mx_it] = std::minmax_element(ks.begin(), ks.end());
    const double lo = *mn_it, hi = *mx_it;
    if (!(hi > lo)) throw DegenerateRange("constant training clearness index");

    McmModel model;
    model.n_states = n_states;
    model.edges.resize(n_states + 1);
    for (int i = 0; i <= n_states; ++i)
        model.edges[i] = lo + (hi - lo) * static_cast<double>(i) / n_states;
    model.edges.back() = hi;

    auto state_of = [&](double k) {
        if (k <= lo) return 0;
        if (k >= hi) return n_states - 1;
        return std::clamp(static_cast<int>((k - lo) / (hi - lo) * n_states), 0, n_states - 1);
    };

    std::vector<double> census(static_cast<std::size_t>(n_states) * n_states, 0.0);
    const std::int64_t lag_minutes = horizon_steps * step;
    std::size_t j = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::int64_t want = entries[i].t + lag_minutes;
        while (j < entries.size() && entries[j].t < want) ++j;
        if (j < entries.size() && entries[j].t == want && entries[j].day == entries[i].day)
            census[state_of(entries[i].k) * n_states + state_of(entries[j].k)] += 1.0;
    }

    model.transition.resize(census.size());
    for (int r = 0; r < n_states; ++r) {
        double total = 0.0;
        for (int c = 0; c < n_states; ++c) total += census[r * n_states + c];
        if (total > 0.0) {
            for (int c = 0; c < n_states; ++c)
                model.transition[r * n_states + c] = census[r * n_states + c] / total;
        } else {
            for (int c = 0; c < n_states; ++c)
                model.transition[r * n_states + c] = 1.0 / n_states;
        }
        const double s = model.row_sum(r);
        for (int c = 0; c < n_states; ++c) model.transition[r * n_states + c] /= s;
    }
    return model;
}

DistPtr mcm_forecast(const McmModel& model, double current_k) {
    if (model.n_states < 2) throw DataError("mcm: model not fitted");
    const double lo = model.edges.front();
    const double hi = model.edges.back();
    int state;
    if (current_k <= lo) {
        state = 0;  // clamp below training range
    } else if (current_k >= hi) {
        state = model.n_states - 1;
    } else {
        state = std::clamp(static_cast<int>((current_k - lo) / (hi - lo) * model.n_states), 0,
                           model.n_states - 1);
    }
    std::vector<double> weights(model.transition.begin() + state * model.n_states,
                                model.transition.begin() + (state + 1) * model.n_states);
    return make_piecewise_uniform(model.edges, std::move(weights));
}

}  // namespace solarcast
