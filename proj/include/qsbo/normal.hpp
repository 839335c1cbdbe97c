#ifndef QSBO_NORMAL_HPP
#define QSBO_NORMAL_HPP

namespace qsbo {

/// Standard normal density phi(x).
double normal_pdf(double x);

/// Standard normal CDF Phi(x), evaluated through erfc for tail accuracy.
double normal_cdf(double x);

/// Inverse standard normal CDF.
///
/// Rational approximation refined by one Newton step against the
/// erfc-based CDF; absolute error well below 1e-9 on [1e-6, 1-1e-6].
/// Throws InvalidInputError unless u lies strictly inside (0, 1).
double probit(double u);

} // namespace qsbo

#endif // QSBO_NORMAL_HPP
