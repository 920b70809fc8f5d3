#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "riskdp/errors.hpp"
#include "riskdp/risk.hpp"
#include "riskdp/rng.hpp"
#include "test_util.hpp"

using namespace riskdp;

namespace {

FiniteDistribution uniform4() {
    return make_distribution({1, 2, 3, 4}, {0.25, 0.25, 0.25, 0.25});
}

FiniteDistribution shifted(const FiniteDistribution& d, double c) {
    std::vector<double> image(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) image[i] = d.atoms()[i] + c;
    return pushforward(d, image);
}

FiniteDistribution scaled(const FiniteDistribution& d, double c) {
    std::vector<double> image(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) image[i] = d.atoms()[i] * c;
    return pushforward(d, image);
}

} // namespace

TEST_CASE("expectation") {
    CHECK(expectation(FiniteDistribution::dirac(5)) == 5.0);
    CHECK(expectation(make_distribution({1, 3}, {0.5, 0.5})) == doctest::Approx(2.0));
    CHECK(expectation(make_distribution({0, 10}, {0.9, 0.1})) ==
          doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("value_at_risk quantile scan") {
    CHECK(value_at_risk(uniform4(), 0.3) == 3.0);
    CHECK(value_at_risk(FiniteDistribution::dirac(-2.5), 0.7) == -2.5);
    CHECK(value_at_risk(make_distribution({0, 10}, {0.9, 0.1}), 0.05) == 10.0);
    CHECK_THROWS_AS(value_at_risk(uniform4(), 0.0), Error);
    CHECK_THROWS_AS(value_at_risk(uniform4(), 1.0), Error);
}

TEST_CASE("avar closed form at the quantile") {
    CHECK(avar(make_distribution({0, 10}, {0.5, 0.5}), 0.5) ==
          doctest::Approx(10.0).epsilon(1e-12));
    // 3 + 4 * E[Z-3]_+ = 3 + 4 * 0.25 = 4
    CHECK(avar(uniform4(), 0.25) == doctest::Approx(4.0).epsilon(1e-12));
    auto d = make_distribution({-1, 2, 7}, {0.3, 0.4, 0.3});
    CHECK(avar(d, 1.0) == doctest::Approx(expectation(d)).epsilon(1e-14));
    CHECK_THROWS_AS(avar(d, 0.0), Error);
    CHECK_THROWS_AS(avar(d, 1.5), Error);
}

TEST_CASE("entropic risk") {
    CHECK(entropic_risk(FiniteDistribution::dirac(3.5), 2.0) ==
          doctest::Approx(3.5).epsilon(1e-12));
    auto coin = make_distribution({0, 1}, {0.5, 0.5});
    CHECK(entropic_risk(coin, 1.0) ==
          doctest::Approx(std::log((1.0 + std::exp(1.0)) / 2.0)).epsilon(1e-12));
    CHECK(entropic_risk(coin, 1e-6) == doctest::Approx(0.5).epsilon(1e-3));
    // large tau*z would overflow without the max shift
    auto wide = make_distribution({0, 700}, {0.5, 0.5});
    CHECK(std::isfinite(entropic_risk(wide, 1.0)));
    CHECK_THROWS_AS(entropic_risk(coin, 0.0), Error);
}

TEST_CASE("evaluate dispatches") {
    CHECK(evaluate(RiskSpec::value_at_risk(0.3), uniform4()) == 3.0);
    CHECK(evaluate(RiskSpec::expectation(), FiniteDistribution::dirac(5)) == 5.0);
    CHECK(evaluate(RiskSpec::average_value_at_risk(1.0),
                   make_distribution({1, 3}, {0.5, 0.5})) == doctest::Approx(2.0));
}

TEST_CASE("robust_evaluate takes the worst member") {
    auto lo = make_distribution({0, 10}, {0.9, 0.1});
    auto hi = make_distribution({0, 10}, {0.5, 0.5});

    auto ex = robust_evaluate(RiskSpec::expectation(), {lo, hi});
    CHECK(ex.value == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(ex.argmax == 1);

    auto qr = robust_evaluate(RiskSpec::value_at_risk(0.2), {lo, hi});
    CHECK(qr.value == 10.0);
    CHECK(qr.argmax == 1);

    auto single = robust_evaluate(RiskSpec::value_at_risk(0.2), {lo});
    CHECK(single.value == evaluate(RiskSpec::value_at_risk(0.2), lo));
    CHECK(single.argmax == 0);

    CHECK_THROWS_AS(robust_evaluate(RiskSpec::expectation(), {}), Error);
}

TEST_CASE("robust_evaluate is monotone under set inclusion") {
    SplitMix64 rng(5150);
    for (int trial = 0; trial < 100; ++trial) {
        RiskSpec risk = testutil::random_risk(rng);
        std::vector<FiniteDistribution> members{testutil::random_dist(rng)};
        double prev = robust_evaluate(risk, members).value;
        for (int add = 0; add < 3; ++add) {
            members.push_back(testutil::random_dist(rng));
            double cur = robust_evaluate(risk, members).value;
            CHECK(cur >= prev - 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("var and avar agree with the brute-force oracles") {
    SplitMix64 rng(31337);
    for (int trial = 0; trial < 500; ++trial) {
        auto d = testutil::random_dist(rng);
        double alpha = rng.uniform(0.05, 0.95);
        CHECK(value_at_risk(d, alpha) == oracles::var_by_cdf_scan(d, alpha));
        CHECK(avar(d, alpha) ==
              doctest::Approx(oracles::avar_by_tau_grid(d, alpha)).epsilon(1e-9));
    }
}

TEST_CASE("translation equivariance for every risk") {
    SplitMix64 rng(11);
    const RiskSpec risks[] = {RiskSpec::expectation(), RiskSpec::value_at_risk(0.3),
                              RiskSpec::average_value_at_risk(0.4),
                              RiskSpec::entropic(1.0)};
    for (int trial = 0; trial < 200; ++trial) {
        auto d = testutil::random_dist(rng);
        double c = rng.uniform(-10.0, 10.0);
        for (const auto& risk : risks) {
            double base = evaluate(risk, d);
            double moved = evaluate(risk, shifted(d, c));
            CHECK(moved == doctest::Approx(base + c).epsilon(1e-9));
        }
    }
}

TEST_CASE("positive homogeneity for expectation, var, avar") {
    SplitMix64 rng(12);
    const RiskSpec risks[] = {RiskSpec::expectation(), RiskSpec::value_at_risk(0.25),
                              RiskSpec::average_value_at_risk(0.6)};
    for (int trial = 0; trial < 200; ++trial) {
        auto d = testutil::random_dist(rng);
        double c = rng.uniform(0.0, 5.0);
        for (const auto& risk : risks) {
            double lhs = evaluate(risk, scaled(d, c));
            double rhs = c * evaluate(risk, d);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        }
    }
}

TEST_CASE("avar dominates var and the mean; both quantile risks shrink in alpha") {
    SplitMix64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        auto d = testutil::random_dist(rng);
        double alpha = rng.uniform(0.05, 0.95);
        double a = avar(d, alpha);
        CHECK(a >= value_at_risk(d, alpha) - 1e-12);
        CHECK(a >= expectation(d) - 1e-9);
    }
    for (int trial = 0; trial < 50; ++trial) {
        auto d = testutil::random_dist(rng);
        double prev_var = value_at_risk(d, 0.05);
        double prev_avar = avar(d, 0.05);
        for (double alpha = 0.15; alpha < 1.0; alpha += 0.1) {
            double v = value_at_risk(d, alpha);
            double a = avar(d, alpha);
            CHECK(v <= prev_var + 1e-12);
            CHECK(a <= prev_avar + 1e-9);
            prev_var = v;
            prev_avar = a;
        }
    }
}

TEST_CASE("law invariance under atom splitting") {
    SplitMix64 rng(14);
    const RiskSpec risks[] = {RiskSpec::expectation(), RiskSpec::value_at_risk(0.35),
                              RiskSpec::average_value_at_risk(0.5),
                              RiskSpec::entropic(0.7)};
    for (int trial = 0; trial < 100; ++trial) {
        auto d = testutil::random_dist(rng);
        // split every atom's mass into two equal listings at the same value
        std::vector<double> values, probs;
        for (std::size_t i = 0; i < d.size(); ++i) {
            values.push_back(d.atoms()[i]);
            values.push_back(d.atoms()[i]);
            probs.push_back(d.probs()[i] / 2.0);
            probs.push_back(d.probs()[i] / 2.0);
        }
        auto split = make_distribution(values, probs);
        for (const auto& risk : risks)
            CHECK(evaluate(risk, split) ==
                  doctest::Approx(evaluate(risk, d)).epsilon(1e-12));
    }
}

TEST_CASE("risk_of_weighted agrees with evaluate on built distributions") {
    SplitMix64 rng(15);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng.below(9);
        std::vector<double> values(n);
        for (auto& v : values) v = rng.uniform(-5.0, 5.0);
        auto weights = testutil::random_probs(rng, n);
        RiskSpec risk = testutil::random_risk(rng);
        double direct = risk_of_weighted(risk, values, weights);
        double built = evaluate(risk, make_distribution(values, weights));
        CHECK(direct == doctest::Approx(built).epsilon(1e-11));
    }
}

TEST_CASE("check_axioms: avar is coherent") {
    auto report = check_axioms(RiskSpec::average_value_at_risk(0.5), 200, 42);
    CHECK(report.monotonicity.pass);
    CHECK(report.convexity.pass);
    CHECK(report.translation.pass);
    CHECK(report.homogeneity.pass);
}

TEST_CASE("check_axioms: var fails convexity with a stored witness") {
    auto report = check_axioms(RiskSpec::value_at_risk(0.5), 200, 42);
    CHECK(report.monotonicity.pass);
    CHECK(!report.convexity.pass);
    CHECK(report.translation.pass);
    CHECK(report.homogeneity.pass);
    REQUIRE(report.convexity.counterexample.has_value());
    // replay the witness: blend risk must exceed the blended risks
    const auto& ce = *report.convexity.counterexample;
    std::vector<double> blend(ce.z.size());
    for (std::size_t i = 0; i < ce.z.size(); ++i)
        blend[i] = ce.scalar * ce.z[i] + (1.0 - ce.scalar) * ce.z_prime[i];
    RiskSpec risk = RiskSpec::value_at_risk(0.5);
    double lhs = risk_of_weighted(risk, blend, ce.probs);
    double rhs = ce.scalar * risk_of_weighted(risk, ce.z, ce.probs) +
                 (1.0 - ce.scalar) * risk_of_weighted(risk, ce.z_prime, ce.probs);
    CHECK(lhs > rhs + 1e-9);
}

TEST_CASE("check_axioms: entropic keeps A1-A3, loses homogeneity") {
    auto report = check_axioms(RiskSpec::entropic(1.0), 200, 42);
    CHECK(report.monotonicity.pass);
    CHECK(report.convexity.pass);
    CHECK(report.translation.pass);
    CHECK(!report.homogeneity.pass);
    CHECK(report.homogeneity.counterexample.has_value());
}

TEST_CASE("check_axioms is deterministic in the seed") {
    auto a = check_axioms(RiskSpec::value_at_risk(0.3), 64, 7);
    auto b = check_axioms(RiskSpec::value_at_risk(0.3), 64, 7);
    CHECK(a.convexity.pass == b.convexity.pass);
    if (a.convexity.counterexample) {
        REQUIRE(b.convexity.counterexample.has_value());
        CHECK(a.convexity.counterexample->trial == b.convexity.counterexample->trial);
        CHECK(a.convexity.counterexample->lhs == b.convexity.counterexample->lhs);
    }
}
