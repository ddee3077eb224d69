#pragma once

#include <map>
#include <vector>

#include "solarcast/common.hpp"
#include "solarcast/dataset.hpp"
#include "solarcast/distribution.hpp"

namespace solarcast {

struct EmptyBucket : DataError {
    using DataError::DataError;
};
struct InsufficientHistory : DataError {
    using DataError::DataError;
};
struct DegenerateRange : DataError {
    using DataError::DataError;
};

/// Complete-history persistence: the training distribution of clearness
/// index at each time-of-day slot (5-minute or hourly granularity).
struct ChpModel {
    std::int64_t slot_minutes = 5;
    std::map<int, std::vector<double>> buckets;  // minute-of-day slot -> k values
};

ChpModel chp_fit(const KSeries& train);

/// Ensemble of every training k value observed at the target's slot.
DistPtr chp_forecast(const ChpModel& model, UtcMinute target_time);

inline constexpr std::int64_t kPeenWindowMinutes = 120;

/// Ensemble of valid clearness-index values in the trailing window ending at
/// the forecast time. Throws InsufficientHistory below min_members.
DistPtr peen_forecast(const KSeries& series, std::size_t base_index,
                      std::int64_t window_minutes = kPeenWindowMinutes,
                      std::size_t min_members = 6);

/// Markov-chain mixture: uniform bins over the training k range with a
/// row-stochastic transition matrix at the forecast lag.
struct McmModel {
    std::vector<double> edges;       // n_states + 1, strictly increasing
    std::vector<double> transition;  // n_states x n_states, row-major
    int n_states = 0;

    double row_sum(int row) const;
};

inline constexpr int kDefaultMcmStates = 30;

/// Pair census (k_t -> k_{t+lag}) over same-day daytime pairs; all-zero rows
/// fall back to the uniform distribution.
McmModel mcm_fit(const KSeries& train, int n_states, int horizon_steps);
McmModel mcm_fit_sequence(const std::vector<double>& train_k, int n_states, int lag);

DistPtr mcm_forecast(const McmModel& model, double current_k);

}  // namespace solarcast
