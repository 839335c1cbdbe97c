#include <cmath>
#include <random>

#include <doctest.h>

#include "qsbo/benchmarks.hpp"
#include "qsbo/errors.hpp"
#include "qsbo/rng.hpp"

using namespace qsbo;

TEST_CASE("sinusoidal_quadratic values") {
    CHECK(sinusoidal_quadratic(0.0) == doctest::Approx(0.0));
    CHECK(sinusoidal_quadratic(1.0) == doctest::Approx(0.4411200080598672).epsilon(1e-12));
    CHECK_THROWS_AS(sinusoidal_quadratic(2.5), InvalidInputError);
    CHECK_THROWS_AS(sinusoidal_quadratic(-2.0001), InvalidInputError);
}

TEST_CASE("forrester values") {
    CHECK(forrester(1.0 / 3.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(forrester(1.0) == doctest::Approx(15.82973194597411).epsilon(1e-12));
    CHECK_THROWS_AS(forrester(-0.1), InvalidInputError);
    CHECK_THROWS_AS(forrester(1.1), InvalidInputError);
}

TEST_CASE("branin at the three standard minimizers") {
    const double pi = 3.14159265358979323846;
    const double v1 = branin(pi, 2.275);
    const double v2 = branin(-pi, 12.275);
    const double v3 = branin(9.42478, 2.475);
    CHECK(v1 == doctest::Approx(0.397887).epsilon(1e-5));
    CHECK(std::fabs(v1 - v2) < 1e-4);
    CHECK(std::fabs(v1 - v3) < 1e-4);
    CHECK(std::fabs(v2 - v3) < 1e-4);
    CHECK_THROWS_AS(branin(-5.1, 1.0), InvalidInputError);
    CHECK_THROWS_AS(branin(0.0, 15.5), InvalidInputError);
}

TEST_CASE("registry exposes the three paper functions with grid optima") {
    const auto& registry = benchmark_registry();
    REQUIRE(registry.size() == 3);
    CHECK(find_benchmark("sinq1d").dimension == 1);
    CHECK(find_benchmark("forrester").dimension == 1);
    CHECK(find_benchmark("branin").dimension == 2);
    CHECK_THROWS_AS(find_benchmark("rosenbrock"), InvalidInputError);

    // Grid-populated optima land near the known global minima.
    const auto& sinq_opt = find_benchmark("sinq1d").known_optimum;
    REQUIRE(sinq_opt.has_value());
    CHECK(sinq_opt->second == doctest::Approx(-0.50036).epsilon(1e-3));

    const auto& forr_opt = find_benchmark("forrester").known_optimum;
    REQUIRE(forr_opt.has_value());
    CHECK(forr_opt->second == doctest::Approx(-6.02074).epsilon(1e-3));

    const auto& bran_opt = find_benchmark("branin").known_optimum;
    REQUIRE(bran_opt.has_value());
    CHECK(bran_opt->second == doctest::Approx(0.397887).epsilon(1e-2));
}

TEST_CASE("known optima lie inside their domains") {
    for (const BenchmarkFunction& fn : benchmark_registry()) {
        REQUIRE(fn.known_optimum.has_value());
        const auto& [x, value] = *fn.known_optimum;
        REQUIRE(static_cast<int>(x.size()) == fn.dimension);
        for (int j = 0; j < fn.dimension; ++j) {
            CHECK(x[j] >= fn.domain.bounds[j].first);
            CHECK(x[j] <= fn.domain.bounds[j].second);
        }
        CHECK(fn.evaluate(x) == doctest::Approx(value));
    }
}

TEST_CASE("all functions are finite on 1e5 sampled domain points") {
    std::mt19937_64 gen(314);
    for (const BenchmarkFunction& fn : benchmark_registry()) {
        int bad = 0;
        for (int s = 0; s < 100000; ++s) {
            std::vector<double> x(fn.dimension);
            for (int j = 0; j < fn.dimension; ++j) {
                x[j] = rng::uniform_in(gen, fn.domain.bounds[j].first, fn.domain.bounds[j].second);
            }
            bad += std::isfinite(fn.evaluate(x)) ? 0 : 1;
        }
        CHECK(bad == 0);
    }
}

TEST_CASE("grid minimum lower-bounds optimizer results") {
    for (const BenchmarkFunction& fn : benchmark_registry()) {
        const double floor = fn.known_optimum->second - 1e-9;
        OptimizerConfig config;
        config.n_init = 4;
        config.n_iter = 4;
        config.n_candidates = 100;
        config.seed = 2;
        CHECK(qsbo_run(fn.evaluate, fn.domain, config).final_best >= floor);
        CHECK(random_search_run(fn.evaluate, fn.domain, 8, 2).final_best >= floor);
    }
}

TEST_CASE("grid_minimum rejects degenerate grids") {
    CHECK_THROWS_AS(grid_minimum(find_benchmark("sinq1d"), 1), InvalidInputError);
}
