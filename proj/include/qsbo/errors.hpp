#ifndef QSBO_ERRORS_HPP
#define QSBO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qsbo {

/// Thrown when an argument violates an operation's precondition.
class InvalidInputError : public std::invalid_argument {
public:
    explicit InvalidInputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when a linear-algebra routine cannot produce a usable result
/// (e.g. Cholesky factorization fails even after jitter escalation).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown by hypothesis tests when the data admit no test statistic
/// (e.g. all paired differences are zero).
class DegenerateDataError : public std::runtime_error {
public:
    explicit DegenerateDataError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when command-line arguments cannot be turned into a valid plan.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qsbo

#endif // QSBO_ERRORS_HPP
