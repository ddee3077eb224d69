#pragma once

#include <memory>
#include <string>
#include <vector>

#include "solarcast/common.hpp"

namespace solarcast {

inline constexpr double kSigmaFloor = 1e-6;

struct InvalidProbability : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NonPositiveScale : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Standard normal CDF, |error| < 1e-15 (erfc-based).
double normal_cdf(double z);
/// Standard normal density.
double normal_pdf(double z);
/// Inverse standard normal CDF; rational approximation refined by one
/// Halley step, |error| well below 1e-12 for p in (0, 1).
double normal_quantile(double p);

class Distribution;
using DistPtr = std::shared_ptr<const Distribution>;

/// A predictive distribution exposing the quantile/CDF/CRPS algebra the
/// verification layer needs. Concrete shapes: Gaussian, sorted-sample
/// ensemble, piecewise-uniform mixture, and calibrator-wrapped.
class Distribution {
  public:
    virtual ~Distribution() = default;

    /// p must lie in (0, 1).
    virtual double quantile(double p) const = 0;
    virtual double cdf(double x) const = 0;
    virtual double crps(double y) const;
    /// Distribution of scale*X + shift; scale must be positive.
    virtual DistPtr affine(double scale, double shift) const = 0;

  protected:
    static void check_probability(double p) {
        if (!(p > 0.0 && p < 1.0)) throw InvalidProbability("probability must be in (0,1)");
    }
    static void check_scale(double s) {
        if (!(s > 0.0)) throw NonPositiveScale("scale must be positive");
    }
};

class GaussianDist final : public Distribution {
  public:
    GaussianDist(double mu, double sigma);

    double mu() const { return mu_; }
    double sigma() const { return sigma_; }

    double quantile(double p) const override;
    double cdf(double x) const override;
    double crps(double y) const override;
    DistPtr affine(double scale, double shift) const override;

  private:
    double mu_;
    double sigma_;
};

class EnsembleDist final : public Distribution {
  public:
    /// Samples are sorted on construction; must be nonempty and finite.
    explicit EnsembleDist(std::vector<double> samples);

    const std::vector<double>& samples() const { return samples_; }

    double quantile(double p) const override;  // type-7 interpolation
    double cdf(double x) const override;
    double crps(double y) const override;  // O(n log n) via sorted prefix sums
    DistPtr affine(double scale, double shift) const override;

  private:
    std::vector<double> samples_;
};

class PiecewiseUniformDist final : public Distribution {
  public:
    /// edges strictly increasing, |weights| == |edges|-1, weights sum to 1.
    PiecewiseUniformDist(std::vector<double> edges, std::vector<double> weights);

    const std::vector<double>& edges() const { return edges_; }
    const std::vector<double>& weights() const { return weights_; }

    double quantile(double p) const override;
    double cdf(double x) const override;
    double crps(double y) const override;  // exact per-segment integral
    DistPtr affine(double scale, double shift) const override;

  private:
    std::vector<double> edges_;
    std::vector<double> weights_;
    std::vector<double> cum_;  // CDF at each edge
};

DistPtr make_gaussian(double mu, double sigma);
DistPtr make_ensemble(std::vector<double> samples);
DistPtr make_piecewise_uniform(std::vector<double> edges, std::vector<double> weights);

/// Type-7 sample quantile over a sorted vector.
double sorted_quantile(const std::vector<double>& sorted, double p);

}  // namespace solarcast
