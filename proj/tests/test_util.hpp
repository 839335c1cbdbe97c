#ifndef QSBO_TESTS_TEST_UTIL_HPP
#define QSBO_TESTS_TEST_UTIL_HPP

#include <cmath>
#include <random>

#include "qsbo/rng.hpp"

namespace qsbo::test {

/// Standard normal sampler (Marsaglia polar method); used by the Monte
/// Carlo oracles, independent of any library code under test.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : gen_(seed) {}

    double operator()() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * rng::uniform01(gen_) - 1.0;
            v = 2.0 * rng::uniform01(gen_) - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace qsbo::test

#endif // QSBO_TESTS_TEST_UTIL_HPP
