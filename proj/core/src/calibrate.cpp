#include "solarcast/calibrate.hpp"

#include <algorithm>
#include <cmath>

namespace solarcast {

std::vector<double> pit_values(const std::vector<DistPtr>& predictions,
                               const std::vector<double>& observations) {
    if (predictions.size() != observations.size())
        throw LengthMismatch("pit_values: length mismatch");
    std::vector<double> out(predictions.size());
    for (std::size_t i = 0; i < predictions.size(); ++i)
        out[i] = predictions[i]->cdf(observations[i]);
    return out;
}

std::vector<GaussianMoments> gaussian_moments(const std::vector<DistPtr>& predictions) {
    std::vector<GaussianMoments> out;
    out.reserve(predictions.size());
    for (const auto& d : predictions) {
        const auto* g = dynamic_cast<const GaussianDist*>(d.get());
        if (g == nullptr) throw DataError("calibrator requires Gaussian predictions");
        out.push_back({g->mu(), g->sigma()});
    }
    return out;
}

std::vector<double> isotonic_fit(const std::vector<double>& values) {
    // Pool adjacent violators, uniform weights.
    std::vector<double> level;
    std::vector<std::size_t> count;
    for (double v : values) {
        level.push_back(v);
        count.push_back(1);
        while (level.size() > 1 && level[level.size() - 2] > level.back()) {
            const double merged = (level[level.size() - 2] * count[count.size() - 2] +
                                   level.back() * count.back()) /
                                  (count[count.size() - 2] + count.back());
            count[count.size() - 2] += count.back();
            level[level.size() - 2] = merged;
            level.pop_back();
            count.pop_back();
        }
    }
    std::vector<double> out;
    out.reserve(values.size());
    for (std::size_t b = 0; b < level.size(); ++b)
        out.insert(out.end(), count[b], level[b]);
    return out;
}

// ---------------------------------------------------------------------------
// Calibrated distributions

namespace {

/// Distribution defined by a quantile function; CDF is recovered by monotone
/// bisection and CRPS by the quantile-grid decomposition in the base class.
class QuantileDefinedDist : public Distribution {
  public:
    double cdf(double x) const override {
        constexpr double eps = 1e-9;
        double lo = eps, hi = 1.0 - eps;
        if (x < quantile(lo)) return 0.0;
        if (x >= quantile(hi)) return 1.0;
        while (hi - lo > 1e-9) {
            const double mid = 0.5 * (lo + hi);
            if (quantile(mid) <= x)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    }
};

class CrudeCalibratedDist final : public QuantileDefinedDist {
  public:
    CrudeCalibratedDist(std::shared_ptr<const CrudeCalibrator> cal, GaussianMoments base,
                        double scale, double shift)
        : cal_(std::move(cal)), base_(base), scale_(scale), shift_(shift) {}

    double quantile(double p) const override {
        check_probability(p);
        return scale_ * cal_->quantile(base_, p) + shift_;
    }

    DistPtr affine(double scale, double shift) const override {
        check_scale(scale);
        return std::make_shared<CrudeCalibratedDist>(cal_, base_, scale * scale_,
                                                     scale * shift_ + shift);
    }

  private:
    std::shared_ptr<const CrudeCalibrator> cal_;
    GaussianMoments base_;
    double scale_;
    double shift_;
};

class KuleshovCalibratedDist final : public QuantileDefinedDist {
  public:
    KuleshovCalibratedDist(std::shared_ptr<const KuleshovCalibrator> cal, DistPtr base)
        : cal_(std::move(cal)), base_(std::move(base)) {}

    double quantile(double p) const override {
        check_probability(p);
        return base_->quantile(cal_->remap(p));
    }

    DistPtr affine(double scale, double shift) const override {
        check_scale(scale);
        return std::make_shared<KuleshovCalibratedDist>(cal_, base_->affine(scale, shift));
    }

  private:
    std::shared_ptr<const KuleshovCalibrator> cal_;
    DistPtr base_;
};

}  // namespace

DistPtr make_crude_calibrated(std::shared_ptr<const CrudeCalibrator> cal,
                              GaussianMoments base) {
    return std::make_shared<CrudeCalibratedDist>(std::move(cal), base, 1.0, 0.0);
}

DistPtr make_kuleshov_calibrated(std::shared_ptr<const KuleshovCalibrator> cal,
                                 DistPtr base) {
    return std::make_shared<KuleshovCalibratedDist>(std::move(cal), std::move(base));
}

// ---------------------------------------------------------------------------
// CRUDE

CrudeCalibrator::CrudeCalibrator(std::vector<double> sorted_residuals, double shift)
    : residuals_(std::move(sorted_residuals)), shift_(shift) {
    if (residuals_.empty()) throw EmptyCalibrationSet("empty residual set");
}

double CrudeCalibrator::quantile(const GaussianMoments& pred, double p) const {
    if (!(p > 0.0 && p < 1.0)) throw InvalidProbability("probability must be in (0,1)");
    return pred.mu + shift_ + pred.sigma * sorted_quantile(residuals_, p);
}

CrudeCalibrator CrudeCalibrator::fit(const std::vector<DistPtr>& cal_predictions,
                                     const std::vector<double>& cal_observations,
                                     int shift_grid_size) {
    if (cal_predictions.empty()) throw EmptyCalibrationSet("empty calibration set");
    if (cal_predictions.size() != cal_observations.size())
        throw LengthMismatch("crude_fit: length mismatch");
    const auto moments = gaussian_moments(cal_predictions);

    const std::size_t n = moments.size();
    std::vector<double> residuals(n);
    std::vector<double> sigmas(n);
    for (std::size_t i = 0; i < n; ++i) {
        residuals[i] = (cal_observations[i] - moments[i].mu) / moments[i].sigma;
        sigmas[i] = moments[i].sigma;
    }
    std::sort(residuals.begin(), residuals.end());
    std::sort(sigmas.begin(), sigmas.end());
    const double median_sigma = sorted_quantile(sigmas, 0.5);
    double max_abs_res = 0.0;
    for (double e : residuals) max_abs_res = std::max(max_abs_res, std::abs(e));
    const double span = 2.0 * median_sigma * max_abs_res;

    const auto levels = default_levels();
    auto objective = [&](double shift) {
        CrudeCalibrator trial(residuals, shift);
        double acc = 0.0;
        for (double p : levels) {
            std::size_t below = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (cal_observations[i] <= trial.quantile(moments[i], p)) ++below;
            acc += std::abs(static_cast<double>(below) / static_cast<double>(n) - p);
        }
        return acc / static_cast<double>(levels.size());
    };

    double best_shift = 0.0;
    double best_err = objective(0.0);
    if (shift_grid_size > 1 && span > 0.0) {
        for (int g = 0; g < shift_grid_size; ++g) {
            const double shift =
                -span + 2.0 * span * static_cast<double>(g) / (shift_grid_size - 1);
            const double err = objective(shift);
            if (err < best_err ||
                (err == best_err && std::abs(shift) < std::abs(best_shift))) {
                best_err = err;
                best_shift = shift;
            }
        }
    }
    return CrudeCalibrator(std::move(residuals), best_shift);
}

// ---------------------------------------------------------------------------
// Kuleshov

KuleshovCalibrator::KuleshovCalibrator(std::vector<double> levels,
                                       std::vector<double> coverage)
    : levels_(std::move(levels)), coverage_(std::move(coverage)) {
    if (levels_.size() != coverage_.size() || levels_.size() < 2)
        throw DataError("kuleshov: bad knot arrays");
}

KuleshovCalibrator KuleshovCalibrator::fit(const std::vector<DistPtr>& cal_predictions,
                                           const std::vector<double>& cal_observations,
                                           int grid_size) {
    if (cal_predictions.empty()) throw EmptyCalibrationSet("empty calibration set");
    const auto pits = pit_values(cal_predictions, cal_observations);
    std::vector<double> sorted_pits = pits;
    std::sort(sorted_pits.begin(), sorted_pits.end());

    std::vector<double> levels(grid_size), coverage(grid_size);
    const double n = static_cast<double>(sorted_pits.size());
    for (int g = 0; g < grid_size; ++g) {
        const double p_hat = static_cast<double>(g) / (grid_size - 1);
        levels[g] = p_hat;
        const auto it =
            std::upper_bound(sorted_pits.begin(), sorted_pits.end(), p_hat);
        coverage[g] = static_cast<double>(it - sorted_pits.begin()) / n;
    }
    coverage = isotonic_fit(coverage);
    coverage.front() = 0.0;
    coverage.back() = 1.0;
    return KuleshovCalibrator(std::move(levels), std::move(coverage));
}

double KuleshovCalibrator::remap(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw InvalidProbability("probability must be in (0,1)");
    // Smallest grid level whose fitted coverage reaches p.
    const auto it = std::lower_bound(coverage_.begin(), coverage_.end(), p);
    const std::size_t i = it == coverage_.end() ? coverage_.size() - 1
                                                : static_cast<std::size_t>(it - coverage_.begin());
    constexpr double eps = 1e-4;
    return std::clamp(levels_[i], eps, 1.0 - eps);
}

double KuleshovCalibrator::quantile(const DistPtr& pred, double p) const {
    return pred->quantile(remap(p));
}

// ---------------------------------------------------------------------------
// MLE

MleCalibrator::MleCalibrator(double shift, double scale)
    : shift_(shift), scale_(std::max(scale, 1e-6)) {}

MleCalibrator MleCalibrator::fit(const std::vector<DistPtr>& cal_predictions,
                                 const std::vector<double>& cal_observations) {
    if (cal_predictions.empty()) throw EmptyCalibrationSet("empty calibration set");
    if (cal_predictions.size() != cal_observations.size())
        throw LengthMismatch("mle_fit: length mismatch");
    const auto moments = gaussian_moments(cal_predictions);

    double sw = 0.0, swr = 0.0;
    const std::size_t n = moments.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 1.0 / (moments[i].sigma * moments[i].sigma);
        sw += w;
        swr += w * (cal_observations[i] - moments[i].mu);
    }
    const double a = swr / sw;
    double s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = cal_observations[i] - moments[i].mu - a;
        s2 += r * r / (moments[i].sigma * moments[i].sigma);
    }
    s2 /= static_cast<double>(n);
    return MleCalibrator(a, std::sqrt(s2));
}

DistPtr MleCalibrator::apply(const GaussianMoments& pred) const {
    return make_gaussian(pred.mu + shift_, scale_ * pred.sigma);
}

}  // namespace solarcast
