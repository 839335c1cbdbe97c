#ifndef QSBO_SURROGATE_HPP
#define QSBO_SURROGATE_HPP

#include <cstdint>

#include <Eigen/Dense>

namespace qsbo {

enum class KernelFamily {
    kSquaredExponential,
    kMatern52,
};

/// Stationary ARD kernel: one lengthscale per input dimension plus a
/// signal variance. Inputs are expected in normalized (unit-cube) units.
struct KernelSpec {
    KernelFamily family = KernelFamily::kSquaredExponential;
    Eigen::VectorXd lengthscales;
    double signal_variance = 1.0;
};

struct Prediction {
    double mean = 0.0;
    double variance = 0.0;
};

struct SurrogateFitConfig {
    KernelFamily family = KernelFamily::kSquaredExponential;
    std::uint64_t seed = 0; ///< seeds the random hyperparameter restarts
    int n_starts = 8;       ///< 1 canonical start (l=1, sv=1) + n_starts-1 random
    int sweeps = 3;         ///< coordinate-search passes per start
};

/// Exact GP regression state on the latent z-scale with per-point
/// diagonal noise. Immutable once built; safe to share across readers.
struct SurrogateModel {
    KernelSpec kernel;
    Eigen::MatrixXd train_inputs; ///< n x d
    Eigen::VectorXd targets;      ///< latent z values
    Eigen::VectorXd noise_diag;   ///< per-point variances Sigma_ii
    Eigen::MatrixXd chol_factor;  ///< lower factor L of K + Sigma + jitter*I
    Eigen::VectorXd alpha_vector; ///< (K + Sigma + jitter*I)^{-1} z
    double jitter = 0.0;          ///< diagonal shift actually applied
};

/// k(a, b) for the given spec. Throws InvalidInputError on dimension
/// mismatch between a, b, and the lengthscale vector.
double kernel_eval(const KernelSpec& spec, const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Full n x n kernel matrix of a point set (rows are points).
Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const Eigen::MatrixXd& points);

/// Factorizes K + Sigma (+ escalating jitter) for fixed hyperparameters.
/// Throws NumericalError if no jitter level yields a valid factorization.
SurrogateModel build_model(const KernelSpec& spec, const Eigen::MatrixXd& train_inputs,
                           const Eigen::VectorXd& targets, const Eigen::VectorXd& noise_diag);

/// -1/2 z^T (K+Sigma)^{-1} z - 1/2 log det(K+Sigma) - n/2 log(2 pi),
/// computed through the Cholesky factorization.
double log_marginal_likelihood(const Eigen::MatrixXd& train_inputs, const Eigen::VectorXd& targets,
                               const Eigen::VectorXd& noise_diag, const KernelSpec& spec);

/// Maximizes the marginal likelihood over log-lengthscales in
/// [log 0.01, log 10] and log signal variance in [log 0.01, log 100]
/// (normalized-input units) by multi-start coordinate search with a
/// golden-section line search per coordinate. Deterministic for a fixed
/// seed. Throws NumericalError if every start fails to factorize.
SurrogateModel fit(const Eigen::MatrixXd& train_inputs, const Eigen::VectorXd& targets,
                   const Eigen::VectorXd& noise_diag, const SurrogateFitConfig& config);

/// Posterior mean and variance at x; variance is clamped at zero.
Prediction predict(const SurrogateModel& model, const Eigen::VectorXd& x);

} // namespace qsbo

#endif // QSBO_SURROGATE_HPP
