#include <doctest.h>

#include <cmath>
#include <vector>

#include "solarcast/rng.hpp"
#include "solarcast/serialize.hpp"

using namespace solarcast;

namespace {

NGBoostModel fitted_ngboost() {
    Rng rng(107);
    const std::size_t n = 120;
    Matrix X(n, 2);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        X(i, 0) = rng.uniform(0, 1);
        X(i, 1) = rng.uniform(0, 1);
        // awkward doubles on purpose: serialization must keep every bit
        y[i] = std::sin(7.1 * X(i, 0)) / 3.0 + 0.1 * rng.normal();
    }
    NGBoostConfig cfg;
    cfg.n_estimators = 25;
    cfg.learning_rate = 0.1;
    cfg.minibatch_frac = 0.7;
    cfg.seed = 9;
    return ngboost_fit(X, y, cfg);
}

}  // namespace

TEST_CASE("ngboost round-trip is exact and byte-stable") {
    const NGBoostModel m = fitted_ngboost();
    REQUIRE(!m.stages.empty());
    const std::string doc = serialize_ngboost(m);
    const NGBoostModel back = deserialize_ngboost(doc);

    CHECK(back.config == m.config);
    CHECK(back.init_mu == m.init_mu);
    CHECK(back.init_log_sigma == m.init_log_sigma);
    REQUIRE(back.stages.size() == m.stages.size());
    for (std::size_t s = 0; s < m.stages.size(); ++s) {
        CHECK(back.stages[s].rho == m.stages[s].rho);
        CHECK(back.stages[s].tree_mu == m.stages[s].tree_mu);
        CHECK(back.stages[s].tree_log_sigma == m.stages[s].tree_log_sigma);
    }

    // Serializing the deserialized model reproduces the exact bytes.
    CHECK(serialize_ngboost(back) == doc);

    // Round-tripped model predicts identically.
    Matrix probe(1, 2);
    probe(0, 0) = 0.37;
    probe(0, 1) = 0.61;
    const auto a = ngboost_predict_params(m, probe)[0];
    const auto b = ngboost_predict_params(back, probe)[0];
    CHECK(a.mu == b.mu);
    CHECK(a.log_sigma == b.log_sigma);
}

TEST_CASE("chp round-trip") {
    ChpModel m;
    m.slot_minutes = 60;
    m.buckets[12] = {0.1, 0.2, 1.0 / 3.0};
    m.buckets[13] = {0.9};
    const std::string doc = serialize_chp(m);
    const ChpModel back = deserialize_chp(doc);
    CHECK(back.slot_minutes == 60);
    CHECK(back.buckets.size() == 2);
    CHECK(back.buckets.at(12) == m.buckets.at(12));
    CHECK(back.buckets.at(13) == m.buckets.at(13));
    CHECK(serialize_chp(back) == doc);
}

TEST_CASE("mcm round-trip") {
    const std::vector<double> seq = {0.1, 0.9, 0.2, 0.3, 0.8, 0.55, 0.21};
    const McmModel m = mcm_fit_sequence(seq, 4, 1);
    const std::string doc = serialize_mcm(m);
    const McmModel back = deserialize_mcm(doc);
    CHECK(back.n_states == m.n_states);
    CHECK(back.edges == m.edges);
    CHECK(back.transition == m.transition);
    CHECK(serialize_mcm(back) == doc);
}

TEST_CASE("calibrator round-trips") {
    const CrudeCalibrator crude({-1.25, -0.3, 0.0, 0.7, 2.0}, 0.0125);
    const CrudeCalibrator crude2 = deserialize_crude(serialize_crude(crude));
    CHECK(crude2.residual_quantiles() == crude.residual_quantiles());
    CHECK(crude2.shift() == crude.shift());

    const KuleshovCalibrator kul({0.0, 0.25, 0.5, 0.75, 1.0}, {0.0, 0.2, 0.6, 0.85, 1.0});
    const KuleshovCalibrator kul2 = deserialize_kuleshov(serialize_kuleshov(kul));
    CHECK(kul2.knot_levels() == kul.knot_levels());
    CHECK(kul2.knot_coverage() == kul.knot_coverage());
    for (double p : {0.1, 0.33, 0.91})
        CHECK(kul2.remap(p) == kul.remap(p));

    const MleCalibrator mle(0.31, 1.0 / 7.0);
    const MleCalibrator mle2 = deserialize_mle(serialize_mle(mle));
    CHECK(mle2.shift() == mle.shift());
    CHECK(mle2.scale() == mle.scale());
}

TEST_CASE("wrong kind or version is rejected") {
    const NGBoostModel m = fitted_ngboost();
    const std::string doc = serialize_ngboost(m);
    CHECK_THROWS_AS(deserialize_chp(doc), ParseError);

    std::string tampered = doc;
    const auto pos = tampered.find("\"format_version\":1");
    REQUIRE(pos != std::string::npos);
    tampered.replace(pos, 18, "\"format_version\":2");
    CHECK_THROWS_AS(deserialize_ngboost(tampered), ParseError);

    CHECK_THROWS_AS(deserialize_ngboost("not json at all"), ParseError);
}
