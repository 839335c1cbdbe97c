#ifndef QSBO_RNG_HPP
#define QSBO_RNG_HPP

#include <cstdint>
#include <random>

namespace qsbo::rng {

// Named stream ids. One master seed spawns independent streams so that,
// for example, changing the candidate-set size never perturbs the
// initialization draws.
inline constexpr std::uint64_t kInitStream = 1;
inline constexpr std::uint64_t kCandidateStream = 2;
inline constexpr std::uint64_t kHyperStream = 3;

/// SplitMix64 finalizer; decorrelates nearby seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Derives the generator for a named stream of a master seed.
inline std::mt19937_64 make_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
    const std::uint64_t s = splitmix64(splitmix64(master_seed) ^ splitmix64(stream_id * 0x9e3779b97f4a7c15ull));
    return std::mt19937_64(s);
}

/// Uniform double in [0, 1) with 53 random bits. Used instead of
/// std::uniform_real_distribution so that draws are identical across
/// standard-library implementations.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform double on [lo, hi).
inline double uniform_in(std::mt19937_64& gen, double lo, double hi) {
    return lo + uniform01(gen) * (hi - lo);
}

} // namespace qsbo::rng

#endif // QSBO_RNG_HPP
