#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "solarcast/distribution.hpp"
#include "solarcast/rng.hpp"

using namespace solarcast;

namespace {

// Independent CRPS oracle: trapezoid integration of (F(x) - 1{x>=y})^2 over
// a wide bracket around the distribution's support. Integrated in two pieces
// with the step handled analytically, so the jump at y costs no accuracy.
double crps_numeric(const Distribution& d, double y, double lo, double hi, int n = 100000) {
    auto piece = [&](double a, double b, double step) {
        if (b <= a) return 0.0;
        auto f = [&](double x) {
            const double diff = d.cdf(x) - step;
            return diff * diff;
        };
        const double h = (b - a) / n;
        double acc = 0.5 * (f(a) + f(b));
        for (int i = 1; i < n; ++i) acc += f(a + i * h);
        return acc * h;
    };
    const double mid = std::clamp(y, lo, hi);
    return piece(lo, mid, 0.0) + piece(mid, hi, 1.0);
}

// O(n^2) ensemble CRPS reference.
double crps_ensemble_bruteforce(const std::vector<double>& xs, double y) {
    const double n = static_cast<double>(xs.size());
    double a = 0.0, b = 0.0;
    for (double xi : xs) {
        a += std::abs(xi - y);
        for (double xj : xs) b += std::abs(xi - xj);
    }
    return a / n - b / (2.0 * n * n);
}

// Bisection inverse of the exact normal CDF.
double normal_quantile_bisect(double p) {
    double lo = -10.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (normal_cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("normal cdf/quantile basics") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959964).epsilon(1e-6));
    CHECK(normal_quantile(0.975) == doctest::Approx(normal_quantile_bisect(0.975)).epsilon(1e-10));
    CHECK_THROWS_AS(normal_quantile(0.0), InvalidProbability);
    CHECK_THROWS_AS(normal_quantile(1.0), InvalidProbability);
}

TEST_CASE("gaussian quantile and cdf") {
    GaussianDist g(0.0, 1.0);
    CHECK(g.quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(g.quantile(0.975) == doctest::Approx(1.959964).epsilon(1e-6));
    CHECK(g.cdf(0.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(g.quantile(1.5), InvalidProbability);
}

TEST_CASE("gaussian crps against numeric oracle") {
    GaussianDist g(0.0, 1.0);
    // Frozen from the numeric oracle: crps(N(0,1), 0) = 1/sqrt(pi) * (sqrt(2)-1).
    CHECK(g.crps(0.0) == doctest::Approx(0.2336946).epsilon(1e-6));
    CHECK(g.crps(0.0) == doctest::Approx(crps_numeric(g, 0.0, -12, 12)).epsilon(1e-6));

    Rng rng(7);
    for (int i = 0; i < 20; ++i) {
        const double mu = rng.uniform(-5, 5);
        const double sigma = rng.uniform(0.1, 3.0);
        const double y = rng.uniform(-8, 8);
        GaussianDist d(mu, sigma);
        const double ref = crps_numeric(d, y, mu - 12 * sigma - std::abs(y) - 1,
                                        mu + 12 * sigma + std::abs(y) + 1);
        CHECK(d.crps(y) == doctest::Approx(ref).epsilon(1e-5));
    }
}

TEST_CASE("ensemble quantile, cdf, crps") {
    EnsembleDist e({1.0, 2.0, 3.0});
    CHECK(e.cdf(2.0) == doctest::Approx(2.0 / 3.0));
    CHECK(e.cdf(0.5) == 0.0);
    CHECK(e.cdf(3.5) == 1.0);
    CHECK(e.quantile(0.5) == doctest::Approx(2.0));

    CHECK(EnsembleDist({3.0}).crps(5.0) == doctest::Approx(2.0));
    CHECK(EnsembleDist({0.0, 2.0}).crps(1.0) == doctest::Approx(0.5));
}

TEST_CASE("ensemble crps fast path equals brute force") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + rng.below(200);
        std::vector<double> xs(n);
        for (auto& x : xs) x = rng.uniform(-10, 10);
        const double y = rng.uniform(-12, 12);
        EnsembleDist e(xs);
        CHECK(e.crps(y) == doctest::Approx(crps_ensemble_bruteforce(xs, y)).epsilon(1e-10));
    }
}

TEST_CASE("piecewise uniform basics") {
    PiecewiseUniformDist u({0.0, 1.0}, {1.0});
    CHECK(u.quantile(0.25) == doctest::Approx(0.25));
    CHECK(PiecewiseUniformDist({0.0, 2.0}, {1.0}).cdf(0.5) == doctest::Approx(0.25));

    CHECK_THROWS_AS(PiecewiseUniformDist({0.0, 1.0}, {0.5}), DataError);
    CHECK_THROWS_AS(PiecewiseUniformDist({1.0, 0.0}, {1.0}), DataError);
}

TEST_CASE("piecewise uniform crps matches trapezoid integration") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const int bins = 2 + static_cast<int>(rng.below(6));
        std::vector<double> edges(bins + 1);
        edges[0] = rng.uniform(-2, 0);
        for (int i = 1; i <= bins; ++i) edges[i] = edges[i - 1] + rng.uniform(0.1, 2.0);
        std::vector<double> w(bins);
        double total = 0.0;
        for (auto& wi : w) {
            wi = rng.uniform(0.01, 1.0);
            total += wi;
        }
        for (auto& wi : w) wi /= total;
        PiecewiseUniformDist d(edges, w);
        const double y = rng.uniform(edges.front() - 2.0, edges.back() + 2.0);
        const double ref = crps_numeric(d, y, edges.front() - 3.0, edges.back() + 3.0);
        CHECK(d.crps(y) == doctest::Approx(ref).epsilon(1e-5));
    }
}

TEST_CASE("quantile and cdf are mutual inverses") {
    Rng rng(17);
    const auto dists = std::vector<DistPtr>{
        make_gaussian(0.3, 0.7),
        make_piecewise_uniform({0.0, 0.5, 1.0, 2.0}, {0.2, 0.5, 0.3}),
    };
    for (const auto& d : dists) {
        for (int i = 0; i < 200; ++i) {
            const double p = rng.uniform(0.01, 0.99);
            CHECK(d->cdf(d->quantile(p)) == doctest::Approx(p).epsilon(1e-9));
        }
    }
}

TEST_CASE("affine transform") {
    const auto g = make_gaussian(0.5, 0.1);
    const auto g2 = g->affine(800.0, 0.0);
    const auto* gg = dynamic_cast<const GaussianDist*>(g2.get());
    REQUIRE(gg != nullptr);
    CHECK(gg->mu() == doctest::Approx(400.0));
    CHECK(gg->sigma() == doctest::Approx(80.0));

    CHECK_THROWS_AS(g->affine(-1.0, 0.0), NonPositiveScale);
    CHECK_THROWS_AS(g->affine(0.0, 0.0), NonPositiveScale);

    // identity
    const auto same = g->affine(1.0, 0.0);
    CHECK(same->quantile(0.3) == doctest::Approx(g->quantile(0.3)));
}

TEST_CASE("crps positive homogeneity") {
    Rng rng(19);
    const std::vector<DistPtr> dists = {
        make_gaussian(1.0, 2.0),
        make_ensemble({-1.0, 0.5, 2.0, 2.5}),
        make_piecewise_uniform({0.0, 1.0, 3.0}, {0.4, 0.6}),
    };
    for (const auto& d : dists) {
        for (int i = 0; i < 20; ++i) {
            const double a = rng.uniform(0.2, 5.0);
            const double b = rng.uniform(-3.0, 3.0);
            const double y = rng.uniform(-4.0, 6.0);
            const auto t = d->affine(a, b);
            CHECK(t->crps(a * y + b) == doctest::Approx(a * d->crps(y)).epsilon(1e-9));
        }
        // a = 3 case from the contract
        const auto t = d->affine(3.0, 0.0);
        CHECK(t->crps(3.0 * 1.1) == doctest::Approx(3.0 * d->crps(1.1)).epsilon(1e-9));
    }
}

TEST_CASE("crps is nonnegative and zero only at a point mass") {
    CHECK(EnsembleDist({2.0}).crps(2.0) == doctest::Approx(0.0));
    CHECK(EnsembleDist({2.0}).crps(2.1) > 0.0);
    CHECK(GaussianDist(0, 1).crps(0.0) > 0.0);
    Rng rng(23);
    for (int i = 0; i < 50; ++i) {
        GaussianDist d(rng.uniform(-2, 2), rng.uniform(0.01, 2.0));
        CHECK(d.crps(rng.uniform(-5, 5)) >= 0.0);
    }
}

TEST_CASE("sigma floor") {
    GaussianDist g(1.0, 0.0);
    CHECK(g.sigma() == kSigmaFloor);
}
