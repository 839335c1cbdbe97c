#ifndef QSBO_RANK_TRANSFORM_HPP
#define QSBO_RANK_TRANSFORM_HPP

#include <vector>

namespace qsbo {

/// One trial's quantile-scaled observation.
struct LatentTarget {
    double u;        ///< normalized rank quantile, strictly inside (0, 1)
    double z;        ///< Gaussian pseudo-observation, probit(u)
    double variance; ///< per-point noise variance on the z-scale
};

struct RankTransformOptions {
    double clip_epsilon = 1e-6; ///< u is clipped to [eps, 1-eps]
    double phi_floor = 1e-10;   ///< floor on phi(z) in the variance denominator
    /// Ablation used only by tests: treat ranks as exact quantiles
    /// (zero variance) instead of Beta-distributed order statistics.
    bool point_mass = false;
};

/// Ranks of the given objective values, 1 = smallest. Ties are broken by
/// insertion order (the earlier trial gets the smaller rank), so the
/// result is always a permutation of 1..n.
std::vector<int> compute_ranks(const std::vector<double>& values);

/// Maps rank r of n to the continuity-corrected quantile (r - 0.5)/n,
/// clipped to [clip_epsilon, 1 - clip_epsilon].
double normalized_rank(int r, int n, double clip_epsilon = 1e-6);

/// Variance of the r-th order statistic of n i.i.d. Uniform(0,1) draws:
/// r(n - r + 1) / ((n + 1)^2 (n + 2)).
double beta_order_variance(int r, int n);

/// Delta-method variance of probit(U_(r)): beta_order_variance scaled by
/// 1/phi(z)^2 with phi floored to avoid division blow-up at extreme ranks.
double z_variance(int r, int n, const RankTransformOptions& opts = {});

/// Full pipeline ranks -> quantiles -> probit -> variances, one
/// LatentTarget per input value, in input order.
std::vector<LatentTarget> build_latent_targets(const std::vector<double>& values,
                                               const RankTransformOptions& opts = {});

} // namespace qsbo

#endif // QSBO_RANK_TRANSFORM_HPP
