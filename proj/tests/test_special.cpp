#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "rumor/special_functions.hpp"

using namespace rumor;

TEST_CASE("erlang_log_pdf") {
    REQUIRE_THAT(erlang_log_pdf(1, 0.7), Catch::Matchers::WithinAbs(-0.7, 1e-14));
    REQUIRE_THAT(erlang_log_pdf(3, 2.0),
                 Catch::Matchers::WithinAbs(std::log(2.0 * std::exp(-2.0)), 1e-12));
    REQUIRE(erlang_log_pdf(2, 0.0) == -std::numeric_limits<double>::infinity());
    REQUIRE(erlang_log_pdf(5, 0.0) == -std::numeric_limits<double>::infinity());
    REQUIRE(erlang_log_pdf(1, 0.0) == 0.0);
    REQUIRE_THROWS_AS(erlang_log_pdf(0, 1.0), input_error);
    REQUIRE_THROWS_AS(erlang_log_pdf(1, -0.5), input_error);
}

TEST_CASE("lower incomplete gamma") {
    SECTION("hand values") {
        REQUIRE_THAT(lower_incomplete_gamma(1.0, 1.0),
                     Catch::Matchers::WithinRel(1.0 - std::exp(-1.0), 1e-12));
        REQUIRE(lower_incomplete_gamma(3.5, 0.0) == 0.0);
        REQUIRE_THAT(lower_incomplete_gamma(3.0, 2.0),
                     Catch::Matchers::WithinRel(2.0 - 10.0 * std::exp(-2.0), 1e-12));
    }
    SECTION("integer shapes match the Erlang CDF on a grid") {
        for (int k = 1; k <= 8; ++k) {
            for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 12.0, 40.0}) {
                // P(k,x) = 1 - e^{-x} sum_{j<k} x^j/j!
                double tail = 0.0, term = 1.0;
                for (int j = 0; j < k; ++j) {
                    tail += term;
                    term *= x / (j + 1);
                }
                double expected = 1.0 - std::exp(-x) * tail;
                REQUIRE_THAT(regularized_gamma_p(static_cast<double>(k), x),
                             Catch::Matchers::WithinRel(expected, 1e-12) ||
                                 Catch::Matchers::WithinAbs(expected, 1e-15));
            }
        }
    }
    SECTION("continued-fraction branch saturates") {
        REQUIRE_THAT(regularized_gamma_p(2.0, 60.0), Catch::Matchers::WithinRel(1.0, 1e-12));
    }
    SECTION("log variant") {
        REQUIRE_THAT(log_lower_incomplete_gamma(3.0, 2.0),
                     Catch::Matchers::WithinAbs(std::log(2.0 - 10.0 * std::exp(-2.0)), 1e-12));
    }
    SECTION("domain errors") {
        REQUIRE_THROWS_AS(lower_incomplete_gamma(0.0, 1.0), input_error);
        REQUIRE_THROWS_AS(lower_incomplete_gamma(1.0, -1.0), input_error);
    }
}
