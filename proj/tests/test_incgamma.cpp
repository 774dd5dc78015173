#include <catch2/catch_amalgamated.hpp>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "gtcoef/incgamma.hpp"
#include "gtcoef/rng.hpp"

using gtcoef::reg_inc_gamma_lower;
using gtcoef::reg_inc_gamma_upper;

TEST_CASE("regularized incomplete gamma at closed-form points", "[incgamma]") {
    // k = 1 and k = 2 have elementary forms.
    CHECK(reg_inc_gamma_lower(1.0, 1.0) == Catch::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
    CHECK(reg_inc_gamma_lower(2.0, 1.0) ==
          Catch::Approx(1.0 - 2.0 * std::exp(-1.0)).epsilon(1e-14));
    CHECK(reg_inc_gamma_lower(0.3, 0.0) == 0.0);
    CHECK(reg_inc_gamma_lower(5.0, 0.0) == 0.0);
    CHECK(reg_inc_gamma_upper(2.0, 0.0) == 1.0);
}

TEST_CASE("incomplete gamma rejects bad arguments", "[incgamma]") {
    CHECK_THROWS_AS(reg_inc_gamma_lower(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(reg_inc_gamma_lower(-2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(reg_inc_gamma_lower(1.0, -0.5), std::domain_error);
    CHECK_THROWS_AS(reg_inc_gamma_upper(0.0, 1.0), std::domain_error);
}

TEST_CASE("incomplete gamma accuracy over the working domain", "[incgamma]") {
    // Independent reference: boost::math. Target relative error 1e-12 over
    // k in [0.1, 50], x in [0, 100].
    gtcoef::RandomStream rng(0xD15EA5E5, 0);
    for (int i = 0; i < 400; ++i) {
        const double k = 0.1 + 49.9 * rng.uniform_open01();
        const double x = 100.0 * rng.uniform_open01();
        const double p = reg_inc_gamma_lower(k, x);
        const double p_ref = boost::math::gamma_p(k, x);
        INFO("k=" << k << " x=" << x);
        CHECK(std::abs(p - p_ref) <= 1e-12 * std::max(p_ref, 1e-300));

        const double q = reg_inc_gamma_upper(k, x);
        const double q_ref = boost::math::gamma_q(k, x);
        CHECK(std::abs(q - q_ref) <= 1e-12 * std::max(q_ref, 1e-300));
    }
}

TEST_CASE("P is a nondecreasing map into [0,1] and P + Q = 1", "[incgamma]") {
    gtcoef::RandomStream rng(0xAB12, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const double k = 0.1 + 49.9 * rng.uniform_open01();
        double prev = 0.0;
        for (int j = 0; j <= 200; ++j) {
            const double x = 100.0 * j / 200.0;
            const double p = reg_inc_gamma_lower(k, x);
            REQUIRE(p >= 0.0);
            REQUIRE(p <= 1.0);
            REQUIRE(p >= prev);
            prev = p;
            const double q = reg_inc_gamma_upper(k, x);
            REQUIRE(std::abs(p + q - 1.0) <= 1e-13);
        }
    }
}
