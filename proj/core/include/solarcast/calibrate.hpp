#pragma once

#include <memory>
#include <vector>

#include "solarcast/common.hpp"
#include "solarcast/distribution.hpp"
#include "solarcast/metrics.hpp"

namespace solarcast {

struct EmptyCalibrationSet : DataError {
    using DataError::DataError;
};

/// Probability integral transform: cdf_i(y_i) for each pair.
std::vector<double> pit_values(const std::vector<DistPtr>& predictions,
                               const std::vector<double>& observations);

struct GaussianMoments {
    double mu;
    double sigma;
};

/// Extracts (mu, sigma) from Gaussian predictions; throws if any prediction
/// is not Gaussian.
std::vector<GaussianMoments> gaussian_moments(const std::vector<DistPtr>& predictions);

// ---------------------------------------------------------------------------

/// CRUDE: empirical quantiles of standardized residuals (y - mu)/sigma on the
/// calibration set, plus a constant shift to mu chosen by grid search.
class CrudeCalibrator {
  public:
    static CrudeCalibrator fit(const std::vector<DistPtr>& cal_predictions,
                               const std::vector<double>& cal_observations,
                               int shift_grid_size = 101);

    /// mu + shift + sigma * Quantile(residuals, p).
    double quantile(const GaussianMoments& pred, double p) const;

    const std::vector<double>& residual_quantiles() const { return residuals_; }
    double shift() const { return shift_; }

    CrudeCalibrator(std::vector<double> sorted_residuals, double shift);

  private:
    std::vector<double> residuals_;  // sorted
    double shift_ = 0.0;
};

/// Kuleshov recalibration: isotonic map from model level to empirical
/// coverage, applied through its generalized inverse.
class KuleshovCalibrator {
  public:
    static KuleshovCalibrator fit(const std::vector<DistPtr>& cal_predictions,
                                  const std::vector<double>& cal_observations,
                                  int grid_size = 101);

    /// Smallest model level whose fitted coverage reaches p, clamped away
    /// from the endpoints.
    double remap(double p) const;
    double quantile(const DistPtr& pred, double p) const;

    const std::vector<double>& knot_levels() const { return levels_; }
    const std::vector<double>& knot_coverage() const { return coverage_; }

    KuleshovCalibrator(std::vector<double> levels, std::vector<double> coverage);

  private:
    std::vector<double> levels_;    // includes pinned endpoints 0 and 1
    std::vector<double> coverage_;  // nondecreasing, endpoints 0 and 1
};

/// MLE recalibration: closed-form constant shift and scale under a Gaussian
/// likelihood. Calibrated prediction is Gaussian(mu + a, s * sigma).
class MleCalibrator {
  public:
    static MleCalibrator fit(const std::vector<DistPtr>& cal_predictions,
                             const std::vector<double>& cal_observations);

    double shift() const { return shift_; }
    double scale() const { return scale_; }

    DistPtr apply(const GaussianMoments& pred) const;

    MleCalibrator(double shift, double scale);

  private:
    double shift_ = 0.0;
    double scale_ = 1.0;
};

/// Pool-adjacent-violators isotonic regression (uniform weights).
std::vector<double> isotonic_fit(const std::vector<double>& values);

// ---------------------------------------------------------------------------
// Calibrated predictive distributions

/// Wraps a Gaussian base prediction with a CRUDE calibrator. CDF is computed
/// by monotone bisection on the calibrated quantile function; CRPS through
/// the quantile-grid decomposition.
DistPtr make_crude_calibrated(std::shared_ptr<const CrudeCalibrator> cal,
                              GaussianMoments base);

DistPtr make_kuleshov_calibrated(std::shared_ptr<const KuleshovCalibrator> cal, DistPtr base);

}  // namespace solarcast
