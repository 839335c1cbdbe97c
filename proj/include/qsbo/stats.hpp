#ifndef QSBO_STATS_HPP
#define QSBO_STATS_HPP

#include <string>
#include <vector>

namespace qsbo {

struct SummaryStats {
    double mean = 0.0;
    double median = 0.0;
    double std_dev = 0.0; ///< sample standard deviation (n-1 denominator), 0 for n = 1
    double min = 0.0;
    double max = 0.0;
    int n = 0;
};

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::string test_name;
    int n_pairs = 0;
};

/// Mean, median (midpoint average for even n), sample std dev, min, max.
SummaryStats summarize(const std::vector<double>& values);

/// Two-sided paired t-test on d = a - b with n - 1 degrees of freedom.
/// Throws DegenerateDataError when the differences have zero variance.
TestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b);

/// Two-sided Welch (unequal-variance, unpaired) t-test. Kept alongside the
/// paired test for unpaired comparisons.
TestResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b);

/// Two-sided Wilcoxon signed-rank test. Zero differences are dropped;
/// ties in |d| get midranks; the statistic is the smaller signed rank sum.
/// Exact p by enumeration of the rank-sum distribution for effective
/// n <= 25, normal approximation with continuity correction above that.
TestResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b);

/// Upper-tail probability of Student's t with df degrees of freedom,
/// through the regularized incomplete beta function.
double student_t_sf(double t, double df);

} // namespace qsbo

#endif // QSBO_STATS_HPP
