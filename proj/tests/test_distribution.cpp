#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "gtcoef/distribution.hpp"
#include "gtcoef/rng.hpp"

using namespace gtcoef;

TEST_CASE("construction rejects non-positive parameters", "[distribution]") {
    CHECK_THROWS_AS(DistributionSpec::weibull(0.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(DistributionSpec::weibull(1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(DistributionSpec::gamma(-0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(DistributionSpec::gamma(2.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(DistributionSpec::exponential(0.0), std::invalid_argument);
    CHECK_THROWS_AS(DistributionSpec::weibull(std::nan(""), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(DistributionSpec::from_scale(Family::exponential, 2.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("exponential rate round-trips exactly", "[distribution]") {
    const auto d = DistributionSpec::exponential(3.0);
    CHECK(d.rate() == 3.0);
    CHECK(d.family() == Family::exponential);
    const auto g = DistributionSpec::gamma(2.0, 7.0);
    CHECK(g.rate() == 7.0);
}

TEST_CASE("cdf matches closed forms", "[distribution]") {
    CHECK(cdf(DistributionSpec::weibull(1.0, 1.0), 1.0) ==
          Catch::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
    CHECK(cdf(DistributionSpec::weibull(1.0, 2.0), 0.0) == 0.0);
    CHECK(cdf(DistributionSpec::gamma(2.0, 1.0), 1.0) ==
          Catch::Approx(1.0 - 2.0 * std::exp(-1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(cdf(DistributionSpec::weibull(1.0, 2.0), -1.0), std::domain_error);
}

TEST_CASE("survival matches closed forms and complements cdf", "[distribution]") {
    CHECK(survival(DistributionSpec::weibull(1.0, 2.0), 2.0) ==
          Catch::Approx(std::exp(-4.0)).epsilon(1e-14));
    CHECK(survival(DistributionSpec::gamma(2.0, 1.0), 0.0) == 1.0);
    CHECK(survival(DistributionSpec::exponential(0.7), 0.0) == 1.0);
    CHECK(survival(DistributionSpec::gamma(2.0, 1.0), 1.0) ==
          Catch::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(survival(DistributionSpec::gamma(1.0, 1.0), -0.1), std::domain_error);

    for (const auto& d : {DistributionSpec::weibull(2.0, 3.0), DistributionSpec::gamma(0.7, 2.0),
                          DistributionSpec::exponential(1.3)}) {
        for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
            CHECK(survival(d, t) + cdf(d, t) == Catch::Approx(1.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("hazard matches closed forms and handles the origin", "[distribution]") {
    CHECK(hazard(DistributionSpec::exponential(3.0), 7.0) == 3.0);
    CHECK(hazard(DistributionSpec::weibull(1.0, 2.0), 1.5) == Catch::Approx(3.0).epsilon(1e-14));
    CHECK(hazard(DistributionSpec::gamma(1.0, 2.0), 0.4) == Catch::Approx(2.0).epsilon(1e-13));

    CHECK(hazard(DistributionSpec::weibull(1.0, 2.0), 0.0) == 0.0);
    CHECK(hazard(DistributionSpec::weibull(2.0, 1.0), 0.0) == 0.5);
    CHECK(hazard(DistributionSpec::gamma(3.0, 1.0), 0.0) == 0.0);
    CHECK_THROWS_AS(hazard(DistributionSpec::weibull(1.0, 0.5), 0.0), singularity_error);
    CHECK_THROWS_AS(hazard(DistributionSpec::gamma(0.5, 1.0), 0.0), singularity_error);
}

TEST_CASE("cumulative hazard closed forms and overflow horizon", "[distribution]") {
    CHECK(cumulative_hazard(DistributionSpec::weibull(1.0, 2.0), 2.0) == 4.0);
    CHECK(cumulative_hazard(DistributionSpec::weibull(3.0, 0.7), 0.0) == 0.0);
    CHECK(cumulative_hazard(DistributionSpec::gamma(0.4, 2.0), 0.0) == 0.0);
    CHECK(cumulative_hazard(DistributionSpec::gamma(2.0, 1.0), 1.0) ==
          Catch::Approx(-std::log(2.0 * std::exp(-1.0))).epsilon(1e-13));
    // survival underflows to exactly zero
    CHECK_THROWS_AS(cumulative_hazard(DistributionSpec::gamma(2.0, 1.0), 1e6),
                    std::overflow_error);
    CHECK_THROWS_AS(cumulative_hazard(DistributionSpec::weibull(1.0, 5.0), 1e70),
                    std::overflow_error);
}

TEST_CASE("effective failure rate", "[distribution]") {
    CHECK(effective_failure_rate(DistributionSpec::weibull(1.0, 2.0), 2.0) ==
          Catch::Approx(2.0).epsilon(1e-14));
    // fixed point: the exponential maps to its own rate at every horizon
    for (double T : {0.2, 1.0, 10.0}) {
        CHECK(effective_failure_rate(DistributionSpec::exponential(0.37), T) ==
              Catch::Approx(0.37).epsilon(1e-14));
    }
    CHECK(effective_failure_rate(DistributionSpec::gamma(2.0, 1.0), 1.0) ==
          Catch::Approx(0.30685281944005469).epsilon(1e-12));

    CHECK_THROWS_AS(effective_failure_rate(DistributionSpec::weibull(1.0, 2.0), 0.0),
                    std::domain_error);
    // F(T) numerically 1
    CHECK_THROWS_AS(effective_failure_rate(DistributionSpec::gamma(1.0, 1.0), 1e6),
                    degenerate_error);
    // F(T) numerically 0: (1e-300)^2 underflows
    CHECK_THROWS_AS(effective_failure_rate(DistributionSpec::weibull(1.0, 2.0), 1e-300),
                    degenerate_error);
}

TEST_CASE("shape-1 Weibull and gamma agree with the exponential", "[distribution]") {
    const double rate = 1.7;
    const auto e = DistributionSpec::exponential(rate);
    const auto w = DistributionSpec::weibull(1.0 / rate, 1.0);
    const auto g = DistributionSpec::gamma(1.0, rate);
    for (int i = 1; i <= 40; ++i) {
        const double t = 3.0 * i / 40.0;
        for (const auto& d : {w, g}) {
            CHECK(cdf(d, t) == Catch::Approx(cdf(e, t)).epsilon(1e-12));
            CHECK(survival(d, t) == Catch::Approx(survival(e, t)).epsilon(1e-12));
            CHECK(hazard(d, t) == Catch::Approx(rate).epsilon(1e-12));
            CHECK(cumulative_hazard(d, t) ==
                  Catch::Approx(cumulative_hazard(e, t)).epsilon(1e-12));
            CHECK(effective_failure_rate(d, t) == Catch::Approx(rate).epsilon(1e-12));
        }
    }
}

TEST_CASE("cumulative hazard is -ln survival", "[distribution][property]") {
    gtcoef::RandomStream rng(2024, 0);
    for (int trial = 0; trial < 30; ++trial) {
        const double shape = 0.2 + 4.8 * rng.uniform_open01();
        const double scale = 0.1 + 9.9 * rng.uniform_open01();
        const auto fam = trial % 3;
        const DistributionSpec d = fam == 0   ? DistributionSpec::weibull(scale, shape)
                                   : fam == 1 ? DistributionSpec::gamma(shape, 1.0 / scale)
                                              : DistributionSpec::exponential(1.0 / scale);
        for (int j = 1; j <= 50; ++j) {
            const double t = 20.0 * scale * j / 50.0;
            const double H = cumulative_hazard(d, t);
            const double lnR = std::log(survival(d, t));
            REQUIRE(std::abs(H + lnR) <= 1e-10 * (1.0 + H));
        }
    }
}

TEST_CASE("hazard is monotone in the direction of the shape", "[distribution][property]") {
    gtcoef::RandomStream rng(99, 0);
    for (int trial = 0; trial < 40; ++trial) {
        // draw shapes in [0.2, 5] keeping clear of the constant-hazard point
        double shape = 0.2 + 4.8 * rng.uniform_open01();
        if (std::abs(shape - 1.0) < 0.05) shape += 0.1;
        const double scale = 0.1 + 9.9 * rng.uniform_open01();
        const bool weib = trial % 2 == 0;
        const DistributionSpec d =
            weib ? DistributionSpec::weibull(scale, shape)
                 : DistributionSpec::gamma(shape, 1.0 / scale);
        double prev = hazard(d, 2.0 * scale / 100.0);
        for (int j = 2; j <= 100; ++j) {
            const double t = 2.0 * scale * j / 100.0;
            const double h = hazard(d, t);
            if (shape > 1.0) {
                REQUIRE(h > prev);
            } else {
                REQUIRE(h < prev);
            }
            prev = h;
        }
    }
}

TEST_CASE("dH/dt matches the hazard by central differences", "[distribution][property]") {
    for (const auto& d : {DistributionSpec::weibull(2.0, 2.5), DistributionSpec::gamma(2.0, 1.5),
                          DistributionSpec::exponential(0.8)}) {
        const double scale = d.scale();
        const double step = 1e-5 * scale;
        for (int j = 1; j <= 20; ++j) {
            const double t = scale * (0.5 + 2.5 * j / 20.0);
            const double dh =
                (cumulative_hazard(d, t + step) - cumulative_hazard(d, t - step)) / (2.0 * step);
            const double h = hazard(d, t);
            REQUIRE(std::abs(dh - h) <= 1e-6 * h);
        }
    }
}
