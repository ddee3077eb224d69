#pragma once

#include <utility>
#include <vector>

#include "solarcast/common.hpp"
#include "solarcast/distribution.hpp"

namespace solarcast {

struct LengthMismatch : DataError {
    using DataError::DataError;
};
struct InvalidLevels : DataError {
    using DataError::DataError;
};

/// Default probability grid for coverage checks: 0.05, 0.10, ..., 0.95.
std::vector<double> default_levels();

enum class CalibrationNorm { Absolute, Squared };

struct VerificationRecord {
    double mean_crps = 0.0;         // evaluation-space units (W/m^2 when normalized)
    double calibration_error = 0.0; // dimensionless, [0,1]
    double sharpness = 0.0;         // clearness-index units
    std::size_t n = 0;
    std::vector<std::pair<double, double>> level_curve;  // (p, empirical coverage)
};

/// Mean CRPS in whatever space predictions and observations share.
double mean_crps(const std::vector<DistPtr>& predictions,
                 const std::vector<double>& observations);

/// Clearness-space predictions/observations scored in irradiance space:
/// scores affine(pred_i, e_ext_i, 0) against ghi_i.
double mean_crps_normalized(const std::vector<DistPtr>& predictions,
                            const std::vector<double>& observations_k,
                            const std::vector<double>& normalizers);

/// Mean |coverage(p) - p| (or squared) over the level grid, where
/// coverage(p) is the fraction of observations at or below the p-quantile.
double calibration_error(const std::vector<DistPtr>& predictions,
                         const std::vector<double>& observations,
                         const std::vector<double>& levels = default_levels(),
                         CalibrationNorm norm = CalibrationNorm::Absolute);

/// The raw (p, coverage) pairs behind calibration_error, for plotting.
std::vector<std::pair<double, double>> calibration_curve(
    const std::vector<DistPtr>& predictions, const std::vector<double>& observations,
    const std::vector<double>& levels = default_levels());

enum class SharpnessKind { ImpliedSigma, IntervalWidth };

/// Mean centered-90%-interval width divided by 2 * z_{0.95}, so Gaussian
/// inputs return mean sigma exactly. IntervalWidth reports the raw width.
double sharpness(const std::vector<DistPtr>& predictions,
                 SharpnessKind kind = SharpnessKind::ImpliedSigma);

/// Full verification in one pass: CRPS in irradiance space, calibration and
/// sharpness in clearness-index space.
VerificationRecord verify(const std::vector<DistPtr>& predictions_k,
                          const std::vector<double>& observations_k,
                          const std::vector<double>& normalizers,
                          const std::vector<double>& levels = default_levels());

}  // namespace solarcast
