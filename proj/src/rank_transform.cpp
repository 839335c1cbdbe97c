#include "qsbo/rank_transform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qsbo/errors.hpp"
#include "qsbo/normal.hpp"

namespace qsbo {

std::vector<int> compute_ranks(const std::vector<double>& values) {
    if (values.empty()) {
        throw InvalidInputError("compute_ranks: values must be nonempty");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw InvalidInputError("compute_ranks: values must be finite");
        }
    }
    const int n = static_cast<int>(values.size());
    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    // Stable sort keeps insertion order among ties, so the earlier trial
    // gets the smaller rank.
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return values[i] < values[j]; });
    std::vector<int> ranks(values.size());
    for (int k = 0; k < n; ++k) {
        ranks[order[k]] = k + 1;
    }
    return ranks;
}

double normalized_rank(int r, int n, double clip_epsilon) {
    if (n < 1 || r < 1 || r > n) {
        throw InvalidInputError("normalized_rank: rank out of range 1..n");
    }
    const double u = (static_cast<double>(r) - 0.5) / static_cast<double>(n);
    return std::clamp(u, clip_epsilon, 1.0 - clip_epsilon);
}

double beta_order_variance(int r, int n) {
    if (n < 1 || r < 1 || r > n) {
        throw InvalidInputError("beta_order_variance: rank out of range 1..n");
    }
    const double rd = static_cast<double>(r);
    const double nd = static_cast<double>(n);
    return rd * (nd - rd + 1.0) / ((nd + 1.0) * (nd + 1.0) * (nd + 2.0));
}

double z_variance(int r, int n, const RankTransformOptions& opts) {
    const double u = normalized_rank(r, n, opts.clip_epsilon);
    const double z = probit(u);
    const double density = std::max(normal_pdf(z), opts.phi_floor);
    return beta_order_variance(r, n) / (density * density);
}

std::vector<LatentTarget> build_latent_targets(const std::vector<double>& values,
                                               const RankTransformOptions& opts) {
    const std::vector<int> ranks = compute_ranks(values);
    const int n = static_cast<int>(values.size());
    std::vector<LatentTarget> targets;
    targets.reserve(values.size());
    for (int r : ranks) {
        LatentTarget t;
        t.u = normalized_rank(r, n, opts.clip_epsilon);
        t.z = probit(t.u);
        t.variance = opts.point_mass ? 0.0 : z_variance(r, n, opts);
        targets.push_back(t);
    }
    return targets;
}

} // namespace qsbo
