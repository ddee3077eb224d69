#pragma once

#include <cstdint>
#include <vector>

#include "solarcast/common.hpp"
#include "solarcast/dataset.hpp"
#include "solarcast/distribution.hpp"
#include "solarcast/tree.hpp"

namespace solarcast {

struct DegenerateTargets : DataError {
    using DataError::DataError;
};
struct DimensionMismatch : DataError {
    using DataError::DataError;
};

struct NGBoostConfig {
    int n_estimators = 500;
    double learning_rate = 0.01;
    int max_depth = 3;
    int min_samples_leaf = 1;
    double minibatch_frac = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
    bool operator==(const NGBoostConfig&) const = default;
};

struct NGBoostStage {
    RegressionTree tree_mu;
    RegressionTree tree_log_sigma;
    double rho = 1.0;

    bool operator==(const NGBoostStage&) const = default;
};

/// Gaussian-output boosted model: marginal MLE initialization plus a
/// sequence of scaled tree pairs in (mu, log sigma).
struct NGBoostModel {
    NGBoostConfig config;
    double init_mu = 0.0;
    double init_log_sigma = 0.0;
    std::vector<NGBoostStage> stages;
    std::vector<double> train_nll_trace;  // full-train-set NLL after each accepted stage

    bool operator==(const NGBoostModel&) const = default;
};

/// Fisher-preconditioned gradient of the Gaussian NLL in (mu, log sigma):
/// ((mu - y), (1 - z^2)/2) with z = (y - mu)/sigma.
std::pair<double, double> natural_gradient(double mu, double log_sigma, double y);

/// Gaussian NLL at one point (constants included).
double gaussian_nll(double mu, double log_sigma, double y);

NGBoostModel ngboost_fit(const SupervisedDataset& dataset, const NGBoostConfig& config);
NGBoostModel ngboost_fit(const Matrix& X, const std::vector<double>& y,
                         const NGBoostConfig& config);

struct GaussianParams {
    double mu;
    double log_sigma;
};

std::vector<GaussianParams> ngboost_predict_params(const NGBoostModel& model,
                                                   const Matrix& X);
std::vector<DistPtr> ngboost_predict(const NGBoostModel& model, const Matrix& X);

}  // namespace solarcast
