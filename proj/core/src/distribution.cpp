#include "solarcast/distribution.hpp"

#include <algorithm>
#include <cmath>

namespace solarcast {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrtPi = 1.7724538509055159;
constexpr double kInvSqrt2Pi = 0.3989422804014327;
}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidProbability("quantile level must be in (0,1)");

    // Acklam's rational approximation.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // One Halley step against the exact CDF.
    const double e = normal_cdf(x) - p;
    const double u = e / normal_pdf(x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

double sorted_quantile(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 0) throw DataError("quantile of empty sample");
    if (n == 1) return sorted[0];
    const double h = p * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double Distribution::crps(double y) const {
    // Quantile-decomposition fallback: twice the mean pinball loss over a
    // 199-level grid. Exact shapes override with closed forms.
    constexpr int levels = 199;
    double acc = 0.0;
    for (int i = 1; i <= levels; ++i) {
        const double p = static_cast<double>(i) / (levels + 1);
        const double q = quantile(p);
        const double indicator = (y < q) ? 1.0 : 0.0;
        acc += (indicator - p) * (q - y);
    }
    return 2.0 * acc / levels;
}

// ---------------------------------------------------------------------------
// Gaussian

GaussianDist::GaussianDist(double mu, double sigma)
    : mu_(mu), sigma_(std::max(sigma, kSigmaFloor)) {
    if (!std::isfinite(mu) || !std::isfinite(sigma)) throw DataError("non-finite Gaussian parameters");
}

double GaussianDist::quantile(double p) const {
    check_probability(p);
    return mu_ + sigma_ * normal_quantile(p);
}

double GaussianDist::cdf(double x) const { return normal_cdf((x - mu_) / sigma_); }

double GaussianDist::crps(double y) const {
    const double z = (y - mu_) / sigma_;
    return sigma_ * (z * (2.0 * normal_cdf(z) - 1.0) + 2.0 * normal_pdf(z) - 1.0 / kSqrtPi);
}

DistPtr GaussianDist::affine(double scale, double shift) const {
    check_scale(scale);
    return make_gaussian(scale * mu_ + shift, scale * sigma_);
}

// ---------------------------------------------------------------------------
// Ensemble

EnsembleDist::EnsembleDist(std::vector<double> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) throw DataError("empty ensemble");
    for (double v : samples_)
        if (!std::isfinite(v)) throw DataError("non-finite ensemble member");
    std::sort(samples_.begin(), samples_.end());
}

double EnsembleDist::quantile(double p) const {
    check_probability(p);
    return sorted_quantile(samples_, p);
}

double EnsembleDist::cdf(double x) const {
    const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
    return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

double EnsembleDist::crps(double y) const {
    // (1/n) sum |x_i - y| - (1/2n^2) sum_ij |x_i - x_j|; the pairwise term
    // collapses to a single pass over the sorted members.
    const std::size_t n = samples_.size();
    double abs_term = 0.0;
    double pair_term = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        abs_term += std::abs(samples_[i] - y);
        pair_term += samples_[i] * (2.0 * static_cast<double>(i) -
                                    static_cast<double>(n) + 1.0);
    }
    const double dn = static_cast<double>(n);
    return abs_term / dn - pair_term / (dn * dn);
}

DistPtr EnsembleDist::affine(double scale, double shift) const {
    check_scale(scale);
    std::vector<double> out(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) out[i] = scale * samples_[i] + shift;
    return make_ensemble(std::move(out));
}

// ---------------------------------------------------------------------------
// Piecewise uniform mixture

PiecewiseUniformDist::PiecewiseUniformDist(std::vector<double> edges,
                                           std::vector<double> weights)
    : edges_(std::move(edges)), weights_(std::move(weights)) {
    if (edges_.size() < 2 || weights_.size() + 1 != edges_.size())
        throw DataError("piecewise-uniform edge/weight size mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
        if (!(edges_[i] < edges_[i + 1])) throw DataError("edges must be strictly increasing");
        if (weights_[i] < 0.0) throw DataError("negative weight");
        total += weights_[i];
    }
    if (std::abs(total - 1.0) > 1e-9) throw DataError("weights must sum to 1");
    cum_.resize(edges_.size());
    cum_[0] = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) cum_[i + 1] = cum_[i] + weights_[i];
    cum_.back() = 1.0;
}

double PiecewiseUniformDist::quantile(double p) const {
    check_probability(p);
    // First segment whose cumulative mass reaches p; invert the linear CDF.
    const auto it = std::lower_bound(cum_.begin() + 1, cum_.end(), p);
    const std::size_t i = static_cast<std::size_t>(it - cum_.begin()) - 1;
    const double w = cum_[i + 1] - cum_[i];
    if (w <= 0.0) return edges_[i + 1];
    const double frac = (p - cum_[i]) / w;
    return edges_[i] + frac * (edges_[i + 1] - edges_[i]);
}

double PiecewiseUniformDist::cdf(double x) const {
    if (x <= edges_.front()) return 0.0;
    if (x >= edges_.back()) return 1.0;
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - edges_.begin()) - 1;
    const double frac = (x - edges_[i]) / (edges_[i + 1] - edges_[i]);
    return cum_[i] + frac * (cum_[i + 1] - cum_[i]);
}

double PiecewiseUniformDist::crps(double y) const {
    // Integral of (F(x) - 1{x >= y})^2; F is linear on each segment so the
    // integrand is an exact quadratic on each subinterval.
    double total = 0.0;
    if (y < edges_.front()) total += edges_.front() - y;  // F=0, step=1
    if (y > edges_.back()) total += y - edges_.back();    // F=1, step=0

    auto segment = [](double A, double s, double len) {
        // integral of (A + s*u)^2 du over [0, len]
        return A * A * len + A * s * len * len + s * s * len * len * len / 3.0;
    };

    for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
        const double a = edges_[i];
        const double b = edges_[i + 1];
        const double s = (cum_[i + 1] - cum_[i]) / (b - a);
        const double c0 = cum_[i];
        if (y <= a) {
            total += segment(c0 - 1.0, s, b - a);
        } else if (y >= b) {
            total += segment(c0, s, b - a);
        } else {
            total += segment(c0, s, y - a);
            const double fy = c0 + s * (y - a);
            total += segment(fy - 1.0, s, b - y);
        }
    }
    return total;
}

DistPtr PiecewiseUniformDist::affine(double scale, double shift) const {
    check_scale(scale);
    std::vector<double> edges(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) edges[i] = scale * edges_[i] + shift;
    return make_piecewise_uniform(std::move(edges), weights_);
}

DistPtr make_gaussian(double mu, double sigma) {
    return std::make_shared<GaussianDist>(mu, sigma);
}
DistPtr make_ensemble(std::vector<double> samples) {
    return std::make_shared<EnsembleDist>(std::move(samples));
}
DistPtr make_piecewise_uniform(std::vector<double> edges, std::vector<double> weights) {
    return std::make_shared<PiecewiseUniformDist>(std::move(edges), std::move(weights));
}

}  // namespace solarcast
