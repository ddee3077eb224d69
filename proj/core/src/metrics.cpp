#include "solarcast/metrics.hpp"

#include <cmath>

namespace solarcast {

namespace {
const double kZ95 = 1.6448536269514722;  // Phi^-1(0.95)

void check_lengths(std::size_t a, std::size_t b) {
    if (a != b) throw LengthMismatch("prediction/observation length mismatch");
}

void check_levels(const std::vector<double>& levels) {
    if (levels.empty()) throw InvalidLevels("empty level grid");
    double prev = 0.0;
    for (double p : levels) {
        if (!(p > prev && p < 1.0)) throw InvalidLevels("levels must be increasing in (0,1)");
        prev = p;
    }
}
}  // namespace

std::vector<double> default_levels() {
    std::vector<double> out;
    out.reserve(19);
    for (int i = 1; i <= 19; ++i) out.push_back(i * 0.05);
    return out;
}

double mean_crps(const std::vector<DistPtr>& predictions,
                 const std::vector<double>& observations) {
    check_lengths(predictions.size(), observations.size());
    if (predictions.empty()) throw DataError("mean_crps over empty set");
    double acc = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i)
        acc += predictions[i]->crps(observations[i]);
    return acc / static_cast<double>(predictions.size());
}

double mean_crps_normalized(const std::vector<DistPtr>& predictions,
                            const std::vector<double>& observations_k,
                            const std::vector<double>& normalizers) {
    check_lengths(predictions.size(), observations_k.size());
    check_lengths(predictions.size(), normalizers.size());
    if (predictions.empty()) throw DataError("mean_crps over empty set");
    double acc = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if (!(normalizers[i] > 0.0)) throw DataError("non-positive normalizer");
        const DistPtr scaled = predictions[i]->affine(normalizers[i], 0.0);
        acc += scaled->crps(normalizers[i] * observations_k[i]);
    }
    return acc / static_cast<double>(predictions.size());
}

std::vector<std::pair<double, double>> calibration_curve(
    const std::vector<DistPtr>& predictions, const std::vector<double>& observations,
    const std::vector<double>& levels) {
    check_lengths(predictions.size(), observations.size());
    check_levels(levels);
    if (predictions.empty()) throw DataError("calibration over empty set");

    std::vector<std::pair<double, double>> curve;
    curve.reserve(levels.size());
    for (double p : levels) {
        std::size_t below = 0;
        for (std::size_t i = 0; i < predictions.size(); ++i)
            if (observations[i] <= predictions[i]->quantile(p)) ++below;
        curve.emplace_back(p, static_cast<double>(below) /
                                  static_cast<double>(predictions.size()));
    }
    return curve;
}

double calibration_error(const std::vector<DistPtr>& predictions,
                         const std::vector<double>& observations,
                         const std::vector<double>& levels, CalibrationNorm norm) {
    const auto curve = calibration_curve(predictions, observations, levels);
    double acc = 0.0;
    for (const auto& [p, cov] : curve) {
        const double d = std::abs(cov - p);
        acc += norm == CalibrationNorm::Absolute ? d : d * d;
    }
    return acc / static_cast<double>(curve.size());
}

double sharpness(const std::vector<DistPtr>& predictions, SharpnessKind kind) {
    if (predictions.empty()) return 0.0;
    double acc = 0.0;
    for (const auto& d : predictions) acc += d->quantile(0.95) - d->quantile(0.05);
    acc /= static_cast<double>(predictions.size());
    return kind == SharpnessKind::ImpliedSigma ? acc / (2.0 * kZ95) : acc;
}

VerificationRecord verify(const std::vector<DistPtr>& predictions_k,
                          const std::vector<double>& observations_k,
                          const std::vector<double>& normalizers,
                          const std::vector<double>& levels) {
    VerificationRecord rec;
    rec.n = predictions_k.size();
    rec.mean_crps = mean_crps_normalized(predictions_k, observations_k, normalizers);
    rec.level_curve = calibration_curve(predictions_k, observations_k, levels);
    double acc = 0.0;
    for (const auto& [p, cov] : rec.level_curve) acc += std::abs(cov - p);
    rec.calibration_error = acc / static_cast<double>(rec.level_curve.size());
    rec.sharpness = sharpness(predictions_k);
    return rec;
}

}  // namespace solarcast
