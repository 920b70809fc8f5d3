#include <doctest.h>

#include <cmath>
#include <limits>

#include "riskdp/distribution.hpp"
#include "riskdp/errors.hpp"
#include "riskdp/rng.hpp"
#include "test_util.hpp"

using namespace riskdp;

TEST_CASE("make_distribution merges duplicates and sorts") {
    auto d = make_distribution({3, 1, 1}, {0.2, 0.5, 0.3});
    REQUIRE(d.size() == 2);
    CHECK(d.atoms()[0] == 1.0);
    CHECK(d.atoms()[1] == 3.0);
    CHECK(d.probs()[0] == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(d.probs()[1] == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("make_distribution point mass and two-point uniform") {
    auto dirac = make_distribution({5}, {1.0});
    REQUIRE(dirac.size() == 1);
    CHECK(dirac.atoms()[0] == 5.0);
    CHECK(dirac.probs()[0] == 1.0);

    auto two = make_distribution({0, 10}, {0.5, 0.5});
    CHECK(two.atoms() == std::vector<double>{0.0, 10.0});
    CHECK(two.probs() == std::vector<double>{0.5, 0.5});
}

TEST_CASE("make_distribution error paths") {
    CHECK_THROWS_AS(make_distribution({1, 2}, {0.5}), Error);
    CHECK_THROWS_AS(make_distribution({1, 2}, {-0.1, 1.1}), Error);
    CHECK_THROWS_AS(make_distribution({1, 2}, {0.7, 0.7}), Error);
    CHECK_THROWS_AS(
        make_distribution({std::numeric_limits<double>::quiet_NaN(), 2}, {0.5, 0.5}),
        Error);
    CHECK_THROWS_AS(make_distribution({}, {}), Error);

    try {
        make_distribution({1, 2}, {0.7, 0.7});
        FAIL("expected MassNotOne");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::mass_not_one);
    }
}

TEST_CASE("make_distribution tolerates 1e-9 mass slack and renormalizes") {
    auto d = make_distribution({1, 2}, {0.5, 0.5 + 4e-10});
    double total = d.probs()[0] + d.probs()[1];
    CHECK(std::abs(total - 1.0) <= 1e-12);
}

TEST_CASE("cdf is a right-continuous step function") {
    auto u4 = make_distribution({1, 2, 3, 4}, {0.25, 0.25, 0.25, 0.25});
    CHECK(u4.cdf(2.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(u4.cdf(0.5) == 0.0);
    CHECK(u4.cdf(4.0) == doctest::Approx(1.0).epsilon(1e-14));

    auto dirac = FiniteDistribution::dirac(5);
    CHECK(dirac.cdf(4.999) == 0.0);
    CHECK(dirac.cdf(5.0) == 1.0);

    auto skew = make_distribution({0, 10}, {0.9, 0.1});
    CHECK(skew.cdf(0.0) == doctest::Approx(0.9).epsilon(1e-14));
}

TEST_CASE("empirical counts multiplicities") {
    SampleBatch b1{{1, 1, 2}, 0};
    auto d1 = empirical(b1);
    CHECK(d1.atoms() == std::vector<double>{1.0, 2.0});
    CHECK(d1.probs()[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    auto d2 = empirical(SampleBatch{{7}, 0});
    CHECK(d2.atoms() == std::vector<double>{7.0});

    auto d3 = empirical(SampleBatch{{3, 1, 3, 1}, 0});
    CHECK(d3.atoms() == std::vector<double>{1.0, 3.0});
    CHECK(d3.probs()[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(d3.probs()[1] == doctest::Approx(0.5).epsilon(1e-14));

    CHECK_THROWS_AS(empirical(SampleBatch{{}, 0}), Error);
}

TEST_CASE("pushforward transports mass") {
    auto u2 = make_distribution({1, 2}, {0.5, 0.5});
    auto constant = pushforward(u2, {5, 5});
    CHECK(constant.size() == 1);
    CHECK(constant.atoms()[0] == 5.0);
    CHECK(constant.probs()[0] == doctest::Approx(1.0).epsilon(1e-14));

    auto u3 = make_distribution({1, 2, 3}, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    auto mapped = pushforward(u3, {1, 1, 2});
    CHECK(mapped.atoms() == std::vector<double>{1.0, 2.0});
    CHECK(mapped.probs()[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    auto dirac = FiniteDistribution::dirac(0);
    CHECK(pushforward(dirac, {9}).atoms()[0] == 9.0);

    CHECK_THROWS_AS(pushforward(u3, {1, 2}), Error);
}

TEST_CASE("random distributions satisfy the structural invariants") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        auto d = testutil::random_dist(rng);
        // strictly increasing atoms, nonnegative probs, unit mass
        for (std::size_t i = 1; i < d.size(); ++i)
            CHECK(d.atoms()[i] > d.atoms()[i - 1]);
        double total = 0.0;
        for (double p : d.probs()) {
            CHECK(p >= 0.0);
            total += p;
        }
        CHECK(std::abs(total - 1.0) <= 1e-12);
        CHECK(std::abs(d.cdf(d.max_atom()) - 1.0) <= 1e-12);

        // rebuilding from its own output is the identity
        auto again = make_distribution(d.atoms(), d.probs());
        CHECK(again.atoms() == d.atoms());
        CHECK(again.probs() == d.probs());
    }
}

TEST_CASE("empirical cdf equals direct counting") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 1 + rng.below(40);
        SampleBatch batch;
        batch.values.resize(n);
        for (auto& v : batch.values)
            v = static_cast<double>(rng.below(10));  // force repeats
        auto emp = empirical(batch);
        for (int q = -1; q <= 10; ++q) {
            double z = static_cast<double>(q) + 0.5;
            double count = 0.0;
            for (double v : batch.values)
                if (v <= z) count += 1.0;
            CHECK(emp.cdf(z) ==
                  doctest::Approx(count / static_cast<double>(n)).epsilon(1e-12));
        }
    }
}

TEST_CASE("pushforward preserves mass and commutes with relabeling") {
    SplitMix64 rng(91);
    for (int trial = 0; trial < 100; ++trial) {
        auto d = testutil::random_dist(rng);
        std::vector<double> image(d.size());
        for (auto& v : image) v = rng.uniform(-3.0, 3.0);
        auto pushed = pushforward(d, image);
        double total = 0.0;
        for (double p : pushed.probs()) total += p;
        CHECK(std::abs(total - 1.0) <= 1e-12);
    }
}
