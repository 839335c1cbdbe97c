#include "qsbo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "qsbo/errors.hpp"
#include "qsbo/normal.hpp"

namespace qsbo {

namespace {

// Continued-fraction part of the regularized incomplete beta, modified
// Lentz algorithm. Requires x <= (a+1)/(a+b+2) for convergence.
double incomplete_beta_cf(double x, double a, double b) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    constexpr int max_iter = 300;

    double c = 1.0;
    double d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::fabs(d) < tiny) {
        d = tiny;
    }
    d = 1.0 / d;
    double result = d;
    for (int m = 1; m <= max_iter; ++m) {
        const double md = static_cast<double>(m);
        // even step
        double numer = md * (b - md) * x / ((a + 2.0 * md - 1.0) * (a + 2.0 * md));
        d = 1.0 + numer * d;
        if (std::fabs(d) < tiny) {
            d = tiny;
        }
        c = 1.0 + numer / c;
        if (std::fabs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        result *= d * c;
        // odd step
        numer = -(a + md) * (a + b + md) * x / ((a + 2.0 * md) * (a + 2.0 * md + 1.0));
        d = 1.0 + numer * d;
        if (std::fabs(d) < tiny) {
            d = tiny;
        }
        c = 1.0 + numer / c;
        if (std::fabs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        const double delta = d * c;
        result *= delta;
        if (std::fabs(delta - 1.0) < eps) {
            break;
        }
    }
    return result;
}

double regularized_incomplete_beta(double x, double a, double b) {
    if (x <= 0.0) {
        return 0.0;
    }
    if (x >= 1.0) {
        return 1.0;
    }
    const double log_front = a * std::log(x) + b * std::log1p(-x) -
                             (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return std::exp(log_front) * incomplete_beta_cf(x, a, b) / a;
    }
    return 1.0 - std::exp(log_front) * incomplete_beta_cf(1.0 - x, b, a) / b;
}

double sample_std(const std::vector<double>& values, double mean) {
    const std::size_t n = values.size();
    if (n < 2) {
        return 0.0;
    }
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return std::sqrt(ss / static_cast<double>(n - 1));
}

std::vector<double> paired_differences(const std::vector<double>& a, const std::vector<double>& b,
                                       const char* caller) {
    if (a.size() != b.size()) {
        throw InvalidInputError(std::string(caller) + ": samples must have equal length");
    }
    if (a.empty()) {
        throw InvalidInputError(std::string(caller) + ": samples must be nonempty");
    }
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        d[i] = a[i] - b[i];
    }
    return d;
}

// Midranks of |d| (ascending), plus the tie-group sizes for the
// normal-approximation variance correction.
void midranks_of_abs(const std::vector<double>& d, std::vector<double>& ranks,
                     std::vector<int>& tie_sizes) {
    const std::size_t n = d.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return std::fabs(d[i]) < std::fabs(d[j]);
    });
    ranks.assign(n, 0.0);
    tie_sizes.clear();
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && std::fabs(d[order[j]]) == std::fabs(d[order[i]])) {
            ++j;
        }
        const double midrank = 0.5 * static_cast<double>(i + 1 + j); // average of i+1..j
        for (std::size_t k = i; k < j; ++k) {
            ranks[order[k]] = midrank;
        }
        tie_sizes.push_back(static_cast<int>(j - i));
        i = j;
    }
}

// Exact two-sided p of the signed-rank statistic: distribution of W+ over
// all 2^n sign assignments via the rank-sum recursion. Midranks are
// half-integers, so everything is doubled to stay integral.
double wilcoxon_exact_p_two_sided(const std::vector<double>& ranks, double w_min) {
    const std::size_t n = ranks.size();
    std::int64_t total2 = 0;
    std::vector<std::int64_t> doubled(n);
    for (std::size_t i = 0; i < n; ++i) {
        doubled[i] = std::llround(2.0 * ranks[i]);
        total2 += doubled[i];
    }
    std::vector<double> ways(static_cast<std::size_t>(total2) + 1, 0.0);
    ways[0] = 1.0;
    std::int64_t reach = 0;
    for (std::size_t i = 0; i < n; ++i) {
        reach += doubled[i];
        for (std::int64_t s = reach; s >= doubled[i]; --s) {
            ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - doubled[i])];
        }
    }
    const std::int64_t w2 = std::llround(2.0 * w_min);
    const double denom = std::ldexp(1.0, static_cast<int>(n)); // 2^n
    double low = 0.0, high = 0.0;
    for (std::int64_t s = 0; s <= total2; ++s) {
        if (s <= w2) {
            low += ways[static_cast<std::size_t>(s)];
        }
        if (s >= total2 - w2) {
            high += ways[static_cast<std::size_t>(s)];
        }
    }
    return std::min(1.0, (low + high) / denom);
}

} // namespace

SummaryStats summarize(const std::vector<double>& values) {
    if (values.empty()) {
        throw InvalidInputError("summarize: values must be nonempty");
    }
    SummaryStats s;
    s.n = static_cast<int>(values.size());
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(s.n);
    s.std_dev = sample_std(values, s.mean);

    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    s.min = sorted.front();
    s.max = sorted.back();
    const std::size_t half = sorted.size() / 2;
    s.median = (sorted.size() % 2 == 1) ? sorted[half] : 0.5 * (sorted[half - 1] + sorted[half]);
    return s;
}

TestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b) {
    const std::vector<double> d = paired_differences(a, b, "paired_t_test");
    const int n = static_cast<int>(d.size());
    if (n < 2) {
        throw InvalidInputError("paired_t_test: need at least two pairs");
    }
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / n;
    const double sd = sample_std(d, mean);
    if (sd == 0.0) {
        throw DegenerateDataError("paired_t_test: differences have zero variance");
    }
    TestResult r;
    r.test_name = "paired-t";
    r.n_pairs = n;
    r.statistic = mean / (sd / std::sqrt(static_cast<double>(n)));
    r.p_value = 2.0 * student_t_sf(std::fabs(r.statistic), static_cast<double>(n - 1));
    return r;
}

TestResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2) {
        throw InvalidInputError("welch_t_test: need at least two values per sample");
    }
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / na;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / nb;
    const double va = std::pow(sample_std(a, ma), 2) / na;
    const double vb = std::pow(sample_std(b, mb), 2) / nb;
    if (va + vb == 0.0) {
        throw DegenerateDataError("welch_t_test: both samples have zero variance");
    }
    TestResult r;
    r.test_name = "welch-t";
    r.n_pairs = static_cast<int>(std::min(a.size(), b.size()));
    r.statistic = (ma - mb) / std::sqrt(va + vb);
    const double df = (va + vb) * (va + vb) /
                      (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    r.p_value = 2.0 * student_t_sf(std::fabs(r.statistic), df);
    return r;
}

TestResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> d = paired_differences(a, b, "wilcoxon_signed_rank");
    std::erase(d, 0.0);
    if (d.empty()) {
        throw DegenerateDataError("wilcoxon_signed_rank: all differences are zero");
    }
    const int n = static_cast<int>(d.size());

    std::vector<double> ranks;
    std::vector<int> tie_sizes;
    midranks_of_abs(d, ranks, tie_sizes);

    double w_plus = 0.0, w_minus = 0.0;
    for (int i = 0; i < n; ++i) {
        (d[i] > 0.0 ? w_plus : w_minus) += ranks[i];
    }
    TestResult r;
    r.test_name = "wilcoxon-signed-rank";
    r.n_pairs = n;
    r.statistic = std::min(w_plus, w_minus);

    if (n <= 25) {
        r.p_value = wilcoxon_exact_p_two_sided(ranks, r.statistic);
    } else {
        const double nd = static_cast<double>(n);
        const double mu = nd * (nd + 1.0) / 4.0;
        double tie_term = 0.0;
        for (int t : tie_sizes) {
            const double td = static_cast<double>(t);
            tie_term += td * td * td - td;
        }
        const double sigma = std::sqrt(nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_term / 48.0);
        const double z = (r.statistic - mu + 0.5) / sigma; // continuity correction toward the mean
        r.p_value = std::min(1.0, 2.0 * normal_cdf(z));
    }
    return r;
}

double student_t_sf(double t, double df) {
    if (df < 1.0) {
        throw InvalidInputError("student_t_sf: df must be at least 1");
    }
    if (t == 0.0) {
        return 0.5;
    }
    const double x = df / (df + t * t);
    const double half_tail = 0.5 * regularized_incomplete_beta(x, 0.5 * df, 0.5);
    return t > 0.0 ? half_tail : 1.0 - half_tail;
}

} // namespace qsbo
