#include "solarcast/ngboost.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "solarcast/rng.hpp"

namespace solarcast {

namespace {
constexpr double kHalfLog2Pi = 0.9189385332046727;
}

void NGBoostConfig::validate() const {
    if (n_estimators < 0 || learning_rate <= 0.0 || max_depth < 1 || min_samples_leaf < 1 ||
        minibatch_frac <= 0.0 || minibatch_frac > 1.0)
        throw ConfigError("invalid NGBoost configuration");
}

std::pair<double, double> natural_gradient(double mu, double log_sigma, double y) {
    const double sigma = std::exp(log_sigma);
    const double z = (y - mu) / sigma;
    return {mu - y, 0.5 * (1.0 - z * z)};
}

double gaussian_nll(double mu, double log_sigma, double y) {
    const double z = (y - mu) / std::exp(log_sigma);
    return log_sigma + 0.5 * z * z + kHalfLog2Pi;
}

namespace {

double mean_nll(const std::vector<double>& mu, const std::vector<double>& log_sigma,
                const std::vector<double>& y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) acc += gaussian_nll(mu[i], log_sigma[i], y[i]);
    return acc / static_cast<double>(y.size());
}

}  // namespace

NGBoostModel ngboost_fit(const SupervisedDataset& dataset, const NGBoostConfig& config) {
    return ngboost_fit(dataset.features, dataset.targets_k, config);
}

NGBoostModel ngboost_fit(const Matrix& X, const std::vector<double>& y,
                         const NGBoostConfig& config) {
    config.validate();
    const std::size_t n = y.size();
    if (n == 0 || X.rows() != n) throw DataError("ngboost_fit: empty or mismatched dataset");

    NGBoostModel model;
    model.config = config;

    // Marginal MLE init.
    double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double var = 0.0;
    for (double v : y) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    model.init_mu = mean;
    if (var <= 1e-24) {
        // Degenerate targets: init-only model.
        model.init_log_sigma = std::log(kSigmaFloor);
        return model;
    }
    model.init_log_sigma = 0.5 * std::log(var);

    std::vector<double> mu(n, model.init_mu);
    std::vector<double> log_sigma(n, model.init_log_sigma);

    Rng rng(mix_seed(config.seed, "ngboost.minibatch"));
    const std::size_t batch =
        std::max<std::size_t>(1, static_cast<std::size_t>(
                                     std::llround(config.minibatch_frac * static_cast<double>(n))));

    std::vector<double> g_mu(n), g_ls(n);
    std::vector<double> step_mu(n), step_ls(n);
    double current_nll = mean_nll(mu, log_sigma, y);

    for (int stage = 0; stage < config.n_estimators; ++stage) {
        std::vector<std::size_t> rows;
        if (batch >= n) {
            rows.resize(n);
            std::iota(rows.begin(), rows.end(), std::size_t{0});
        } else {
            rows = rng.sample_without_replacement(n, batch);
        }

        for (std::size_t r : rows) {
            const auto [gm, gs] = natural_gradient(mu[r], log_sigma[r], y[r]);
            g_mu[r] = gm;
            g_ls[r] = gs;
        }

        const RegressionTree tree_mu =
            fit_tree(X, g_mu, rows, config.max_depth, config.min_samples_leaf);
        const RegressionTree tree_ls =
            fit_tree(X, g_ls, rows, config.max_depth, config.min_samples_leaf);

        tree_mu.predict(X, step_mu);
        tree_ls.predict(X, step_ls);

        // Geometric line search over rho in {1, 1/2, ..., 2^-8}; full-set NLL
        // must improve or the stage is rejected and fitting stops.
        double best_rho = 0.0;
        double best_nll = current_nll;
        std::vector<double> trial_mu(n), trial_ls(n);
        for (int k = 0; k <= 8; ++k) {
            const double rho = std::ldexp(1.0, -k);
            const double eta_rho = config.learning_rate * rho;
            for (std::size_t i = 0; i < n; ++i) {
                trial_mu[i] = mu[i] - eta_rho * step_mu[i];
                trial_ls[i] = log_sigma[i] - eta_rho * step_ls[i];
            }
            const double nll = mean_nll(trial_mu, trial_ls, y);
            if (nll < best_nll) {
                best_nll = nll;
                best_rho = rho;
            }
        }
        if (best_rho == 0.0) break;

        const double eta_rho = config.learning_rate * best_rho;
        for (std::size_t i = 0; i < n; ++i) {
            mu[i] -= eta_rho * step_mu[i];
            log_sigma[i] -= eta_rho * step_ls[i];
        }
        current_nll = best_nll;
        model.stages.push_back({tree_mu, tree_ls, best_rho});
        model.train_nll_trace.push_back(current_nll);
    }
    return model;
}

std::vector<GaussianParams> ngboost_predict_params(const NGBoostModel& model,
                                                   const Matrix& X) {
    const std::size_t m = X.rows();
    if (m > 0 && !model.stages.empty()) {
        // All stage trees were fit on the training feature count; any feature
        // referenced past X.cols() means a dimension mismatch.
        for (const auto& st : model.stages)
            for (const auto& nd : st.tree_mu.nodes())
                if (!nd.is_leaf() && static_cast<std::size_t>(nd.feature) >= X.cols())
                    throw DimensionMismatch("feature count does not match training data");
    }

    std::vector<GaussianParams> out(m, {model.init_mu, model.init_log_sigma});
    std::vector<double> tmp;
    for (const NGBoostStage& st : model.stages) {
        const double eta_rho = model.config.learning_rate * st.rho;
        st.tree_mu.predict(X, tmp);
        for (std::size_t i = 0; i < m; ++i) out[i].mu -= eta_rho * tmp[i];
        st.tree_log_sigma.predict(X, tmp);
        for (std::size_t i = 0; i < m; ++i) out[i].log_sigma -= eta_rho * tmp[i];
    }
    return out;
}

std::vector<DistPtr> ngboost_predict(const NGBoostModel& model, const Matrix& X) {
    const auto params = ngboost_predict_params(model, X);
    std::vector<DistPtr> out;
    out.reserve(params.size());
    for (const auto& p : params)
        out.push_back(make_gaussian(p.mu, std::max(std::exp(p.log_sigma), kSigmaFloor)));
    return out;
}

}  // namespace solarcast
