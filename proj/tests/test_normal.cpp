#include <cmath>

#include <doctest.h>

#include "qsbo/errors.hpp"
#include "qsbo/normal.hpp"

using namespace qsbo;

namespace {

// Independent probit oracle: bisection on the erf-based normal CDF.
double probit_by_bisection(double u) {
    double lo = -10.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (0.5 * std::erfc(-mid / std::sqrt(2.0)) < u) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("normal pdf and cdf basics") {
    CHECK(normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-14));
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
    CHECK(normal_cdf(-8.0) > 0.0);
    CHECK(normal_cdf(-8.0) < 1e-14);
}

TEST_CASE("probit matches bisection oracle at spec points") {
    CHECK(probit(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(probit(0.975) == doctest::Approx(1.959964).epsilon(1e-6));
    CHECK(probit(0.1) == doctest::Approx(-1.281552).epsilon(1e-6));
    for (double u : {1e-6, 1e-4, 0.02, 0.3, 0.5, 0.77, 0.9999, 1.0 - 1e-6}) {
        CHECK(std::fabs(probit(u) - probit_by_bisection(u)) < 1e-9);
    }
}

TEST_CASE("probit round-trips the normal CDF on [-5, 5]") {
    for (int i = 0; i <= 1000; ++i) {
        const double x = -5.0 + 10.0 * i / 1000.0;
        CHECK(std::fabs(probit(normal_cdf(x)) - x) < 1e-8);
    }
}

TEST_CASE("probit rejects arguments outside the open unit interval") {
    CHECK_THROWS_AS(probit(0.0), InvalidInputError);
    CHECK_THROWS_AS(probit(1.0), InvalidInputError);
    CHECK_THROWS_AS(probit(-0.5), InvalidInputError);
    CHECK_THROWS_AS(probit(1.5), InvalidInputError);
}
