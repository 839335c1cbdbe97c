#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <doctest.h>

#include "qsbo/errors.hpp"
#include "qsbo/normal.hpp"
#include "qsbo/rank_transform.hpp"
#include "qsbo/rng.hpp"

using namespace qsbo;

namespace {

// Literal rank definition from first principles: 1 + #{j : v_j < v_i},
// ties broken by insertion index.
std::vector<int> ranks_by_counting(const std::vector<double>& values) {
    std::vector<int> ranks(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        int r = 1;
        for (std::size_t j = 0; j < values.size(); ++j) {
            if (values[j] < values[i] || (values[j] == values[i] && j < i)) {
                ++r;
            }
        }
        ranks[i] = r;
    }
    return ranks;
}

} // namespace

TEST_CASE("compute_ranks on the spec examples") {
    CHECK(compute_ranks({3.0, 1.0, 2.0}) == std::vector<int>{3, 1, 2});
    CHECK(compute_ranks({5.0}) == std::vector<int>{1});
    CHECK(compute_ranks({1.0, 1.0, 0.5}) == std::vector<int>{2, 3, 1});
}

TEST_CASE("compute_ranks matches the counting oracle on random data with ties") {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(gen() % 40);
        std::vector<double> values(n);
        for (double& v : values) {
            // Coarse grid forces plenty of ties.
            v = static_cast<double>(gen() % 8);
        }
        const std::vector<int> got = compute_ranks(values);
        CHECK(got == ranks_by_counting(values));
        std::vector<int> sorted = got;
        std::sort(sorted.begin(), sorted.end());
        for (int k = 0; k < n; ++k) {
            CHECK(sorted[k] == k + 1); // permutation of 1..n
        }
    }
}

TEST_CASE("compute_ranks rejects bad input") {
    CHECK_THROWS_AS(compute_ranks({}), InvalidInputError);
    CHECK_THROWS_AS(compute_ranks({1.0, std::numeric_limits<double>::quiet_NaN()}),
                    InvalidInputError);
    CHECK_THROWS_AS(compute_ranks({std::numeric_limits<double>::infinity()}), InvalidInputError);
}

TEST_CASE("normalized_rank continuity correction and clipping") {
    CHECK(normalized_rank(1, 1) == doctest::Approx(0.5));
    CHECK(normalized_rank(1, 5) == doctest::Approx(0.1));
    CHECK(normalized_rank(3, 5) == doctest::Approx(0.5));
    // For huge n the raw quantile falls below the clip threshold.
    CHECK(normalized_rank(1, 1000000) == doctest::Approx(1e-6).epsilon(1e-12));
    CHECK(normalized_rank(1000000, 1000000) == doctest::Approx(1.0 - 1e-6).epsilon(1e-12));
    CHECK_THROWS_AS(normalized_rank(0, 5), InvalidInputError);
    CHECK_THROWS_AS(normalized_rank(6, 5), InvalidInputError);
}

TEST_CASE("beta_order_variance closed form") {
    CHECK(beta_order_variance(1, 1) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
    CHECK(beta_order_variance(3, 5) == doctest::Approx(9.0 / 252.0).epsilon(1e-14));
    CHECK(beta_order_variance(1, 5) == doctest::Approx(5.0 / 252.0).epsilon(1e-14));
    CHECK_THROWS_AS(beta_order_variance(0, 3), InvalidInputError);
    CHECK_THROWS_AS(beta_order_variance(4, 3), InvalidInputError);
}

TEST_CASE("beta_order_variance agrees with Monte Carlo order statistics") {
    // Smaller sibling of the acceptance check: n = 6, 200k samples, 5%.
    const int n = 6;
    const int samples = 200000;
    std::mt19937_64 gen(99);
    std::vector<double> draw(n);
    std::vector<double> sum(n, 0.0), sumsq(n, 0.0);
    for (int s = 0; s < samples; ++s) {
        for (double& u : draw) {
            u = rng::uniform01(gen);
        }
        std::sort(draw.begin(), draw.end());
        for (int r = 0; r < n; ++r) {
            sum[r] += draw[r];
            sumsq[r] += draw[r] * draw[r];
        }
    }
    for (int r = 1; r <= n; ++r) {
        const double mean = sum[r - 1] / samples;
        const double var = sumsq[r - 1] / samples - mean * mean;
        CHECK(beta_order_variance(r, n) == doctest::Approx(var).epsilon(0.05));
    }
}

TEST_CASE("z_variance values and symmetry") {
    CHECK(z_variance(3, 5) == doctest::Approx(0.2243994752564138).epsilon(1e-12));
    CHECK(z_variance(1, 5) == doctest::Approx(0.6442040897597645).epsilon(1e-9));
    for (int n : {3, 5, 10, 21}) {
        for (int r = 1; r <= n; ++r) {
            CHECK(z_variance(r, n) ==
                  doctest::Approx(z_variance(n + 1 - r, n)).epsilon(1e-12));
        }
    }
}

TEST_CASE("z_variance is largest at extreme ranks, smallest at the median") {
    for (int n : {3, 5, 10, 35}) {
        std::vector<double> vars;
        for (int r = 1; r <= n; ++r) {
            vars.push_back(z_variance(r, n));
        }
        const double vmax = *std::max_element(vars.begin(), vars.end());
        const double vmin = *std::min_element(vars.begin(), vars.end());
        CHECK(vars.front() == doctest::Approx(vmax));
        CHECK(vars.back() == doctest::Approx(vmax));
        const int mid = (n - 1) / 2;
        CHECK(vars[mid] == doctest::Approx(vmin));
    }
}

TEST_CASE("latent pipeline stays finite out to n = 1e6") {
    const int n = 1000000;
    for (int r : {1, 2, n / 2, n - 1, n}) {
        const double v = z_variance(r, n);
        CHECK(std::isfinite(v));
        CHECK(v > 0.0);
        CHECK(std::isfinite(probit(normalized_rank(r, n))));
    }
}

TEST_CASE("build_latent_targets single-point pipeline") {
    const auto targets = build_latent_targets({2.0});
    REQUIRE(targets.size() == 1);
    CHECK(targets[0].u == doctest::Approx(0.5));
    CHECK(targets[0].z == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(targets[0].variance == doctest::Approx(0.5235987755982989).epsilon(1e-12));
}

TEST_CASE("build_latent_targets preserves value ordering") {
    const std::vector<double> values = {4.5, -1.0, 2.0, 7.25, 0.0};
    const auto targets = build_latent_targets(values);
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = 0; j < values.size(); ++j) {
            if (values[i] < values[j]) {
                CHECK(targets[i].z < targets[j].z);
            }
        }
    }
}

TEST_CASE("build_latent_targets is invariant under strictly increasing transforms") {
    const std::vector<double> values = {1.0, 2.0, 3.0};
    const std::vector<double> scaled = {10.0, 20.0, 30.0};
    const auto ta = build_latent_targets(values);
    const auto tb = build_latent_targets(scaled);
    REQUIRE(ta.size() == tb.size());
    for (std::size_t i = 0; i < ta.size(); ++i) {
        CHECK(ta[i].u == tb[i].u);
        CHECK(ta[i].z == tb[i].z);
        CHECK(ta[i].variance == tb[i].variance);
    }

    // Property over random data and a nonlinear monotone map.
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(gen() % 30);
        std::vector<double> v(n), g(n);
        for (int i = 0; i < n; ++i) {
            v[i] = 10.0 * rng::uniform01(gen) - 5.0;
            g[i] = std::exp(v[i] / 4.0);
        }
        const auto tv = build_latent_targets(v);
        const auto tg = build_latent_targets(g);
        for (int i = 0; i < n; ++i) {
            CHECK(tv[i].z == tg[i].z);
            CHECK(tv[i].variance == tg[i].variance);
        }
    }
}

TEST_CASE("point-mass ablation zeroes the variances") {
    RankTransformOptions opts;
    opts.point_mass = true;
    const auto targets = build_latent_targets({3.0, 1.0, 2.0}, opts);
    for (const LatentTarget& t : targets) {
        CHECK(t.variance == 0.0);
    }
}
