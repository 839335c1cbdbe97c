#include "qsbo/surrogate.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "qsbo/errors.hpp"
#include "qsbo/rng.hpp"

namespace qsbo {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;

// Hyperparameter box in log space, normalized-input units.
constexpr double kLogLengthscaleLo = -4.605170185988091;  // log 0.01
constexpr double kLogLengthscaleHi = 2.302585092994046;   // log 10
constexpr double kLogSignalLo = -4.605170185988091;       // log 0.01
constexpr double kLogSignalHi = 4.605170185988092;        // log 100

constexpr double kJitterStartFactor = 1e-10;
constexpr double kJitterMaxFactor = 1e-4;

constexpr int kGoldenIterations = 32;

double weighted_sq_distance(const KernelSpec& spec, const Eigen::VectorXd& a,
                            const Eigen::VectorXd& b) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < a.size(); ++j) {
        const double t = (a[j] - b[j]) / spec.lengthscales[j];
        sum += t * t;
    }
    return sum;
}

double kernel_from_sq_distance(const KernelSpec& spec, double r2) {
    switch (spec.family) {
    case KernelFamily::kSquaredExponential:
        return spec.signal_variance * std::exp(-0.5 * r2);
    case KernelFamily::kMatern52: {
        const double d = std::sqrt(5.0 * r2);
        return spec.signal_variance * (1.0 + d + 5.0 * r2 / 3.0) * std::exp(-d);
    }
    }
    return 0.0;
}

struct Factorization {
    Eigen::MatrixXd chol;
    Eigen::VectorXd alpha;
    double jitter = 0.0;
    bool ok = false;
};

Factorization factorize(const Eigen::MatrixXd& kernel, const Eigen::VectorXd& noise_diag,
                        const Eigen::VectorXd& targets) {
    const Eigen::Index n = kernel.rows();
    Eigen::MatrixXd a = kernel;
    a.diagonal() += noise_diag;
    const double mean_diag = a.diagonal().mean();

    Factorization f;
    for (double factor = kJitterStartFactor; factor <= kJitterMaxFactor * 1.0001; factor *= 10.0) {
        const double jitter = factor * mean_diag;
        Eigen::MatrixXd shifted = a;
        shifted.diagonal().array() += jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(shifted);
        if (llt.info() == Eigen::Success) {
            f.chol = llt.matrixL();
            bool finite = true;
            for (Eigen::Index i = 0; i < n && finite; ++i) {
                finite = std::isfinite(f.chol(i, i)) && f.chol(i, i) > 0.0;
            }
            if (!finite) {
                continue;
            }
            f.alpha = llt.solve(targets);
            f.jitter = jitter;
            f.ok = true;
            return f;
        }
    }
    return f;
}

double lml_from_factorization(const Factorization& f, const Eigen::VectorXd& targets) {
    const Eigen::Index n = targets.size();
    double log_det_half = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        log_det_half += std::log(f.chol(i, i));
    }
    return -0.5 * targets.dot(f.alpha) - log_det_half - 0.5 * static_cast<double>(n) * kLogTwoPi;
}

KernelSpec spec_from_log_params(KernelFamily family, const Eigen::VectorXd& log_params) {
    const Eigen::Index d = log_params.size() - 1;
    KernelSpec spec;
    spec.family = family;
    spec.lengthscales = log_params.head(d).array().exp();
    spec.signal_variance = std::exp(log_params[d]);
    return spec;
}

// Golden-section line search minimizing f on [lo, hi]; fixed iteration
// count keeps the search deterministic.
template <typename F>
double golden_section_min(F&& f, double lo, double hi) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < kGoldenIterations; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? x1 : x2;
}

} // namespace

double kernel_eval(const KernelSpec& spec, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size() || a.size() != spec.lengthscales.size()) {
        throw InvalidInputError("kernel_eval: dimension mismatch");
    }
    return kernel_from_sq_distance(spec, weighted_sq_distance(spec, a, b));
}

Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const Eigen::MatrixXd& points) {
    const Eigen::Index n = points.rows();
    Eigen::MatrixXd k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k(i, i) = spec.signal_variance;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v =
                kernel_from_sq_distance(spec, weighted_sq_distance(spec, points.row(i), points.row(j)));
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

SurrogateModel build_model(const KernelSpec& spec, const Eigen::MatrixXd& train_inputs,
                           const Eigen::VectorXd& targets, const Eigen::VectorXd& noise_diag) {
    if (train_inputs.rows() < 1) {
        throw InvalidInputError("build_model: need at least one training point");
    }
    if (train_inputs.rows() != targets.size() || train_inputs.rows() != noise_diag.size()) {
        throw InvalidInputError("build_model: inconsistent training set sizes");
    }
    if (train_inputs.cols() != spec.lengthscales.size()) {
        throw InvalidInputError("build_model: input dimension does not match lengthscales");
    }
    Factorization f = factorize(kernel_matrix(spec, train_inputs), noise_diag, targets);
    if (!f.ok) {
        throw NumericalError("build_model: Cholesky factorization failed after jitter escalation");
    }
    SurrogateModel model;
    model.kernel = spec;
    model.train_inputs = train_inputs;
    model.targets = targets;
    model.noise_diag = noise_diag;
    model.chol_factor = std::move(f.chol);
    model.alpha_vector = std::move(f.alpha);
    model.jitter = f.jitter;
    return model;
}

double log_marginal_likelihood(const Eigen::MatrixXd& train_inputs, const Eigen::VectorXd& targets,
                               const Eigen::VectorXd& noise_diag, const KernelSpec& spec) {
    Factorization f = factorize(kernel_matrix(spec, train_inputs), noise_diag, targets);
    if (!f.ok) {
        throw NumericalError(
            "log_marginal_likelihood: Cholesky factorization failed after jitter escalation");
    }
    return lml_from_factorization(f, targets);
}

SurrogateModel fit(const Eigen::MatrixXd& train_inputs, const Eigen::VectorXd& targets,
                   const Eigen::VectorXd& noise_diag, const SurrogateFitConfig& config) {
    if (train_inputs.rows() < 1) {
        throw InvalidInputError("fit: need at least one training point");
    }
    const Eigen::Index d = train_inputs.cols();
    const Eigen::Index n_params = d + 1; // per-dimension lengthscales + signal variance

    Eigen::VectorXd lo(n_params), hi(n_params);
    lo.head(d).setConstant(kLogLengthscaleLo);
    hi.head(d).setConstant(kLogLengthscaleHi);
    lo[d] = kLogSignalLo;
    hi[d] = kLogSignalHi;

    // Negative LML as the objective; factorization failure scores +inf so
    // the search simply avoids that region.
    auto objective = [&](const Eigen::VectorXd& log_params) {
        const KernelSpec spec = spec_from_log_params(config.family, log_params);
        Factorization f = factorize(kernel_matrix(spec, train_inputs), noise_diag, targets);
        if (!f.ok) {
            return std::numeric_limits<double>::infinity();
        }
        return -lml_from_factorization(f, targets);
    };

    std::mt19937_64 gen(rng::splitmix64(config.seed));

    Eigen::VectorXd best_params;
    double best_value = std::numeric_limits<double>::infinity();

    for (int start = 0; start < config.n_starts; ++start) {
        Eigen::VectorXd params(n_params);
        if (start == 0) {
            params.setZero(); // lengthscales = 1, signal variance = 1
        } else {
            for (Eigen::Index j = 0; j < n_params; ++j) {
                params[j] = rng::uniform_in(gen, lo[j], hi[j]);
            }
        }
        double value = objective(params);
        for (int sweep = 0; sweep < config.sweeps; ++sweep) {
            for (Eigen::Index coord = 0; coord < n_params; ++coord) {
                Eigen::VectorXd probe = params;
                const double candidate = golden_section_min(
                    [&](double p) {
                        probe[coord] = p;
                        return objective(probe);
                    },
                    lo[coord], hi[coord]);
                probe[coord] = candidate;
                const double candidate_value = objective(probe);
                if (candidate_value < value) {
                    params[coord] = candidate;
                    value = candidate_value;
                }
            }
        }
        if (value < best_value) {
            best_value = value;
            best_params = params;
        }
    }

    if (!std::isfinite(best_value)) {
        throw NumericalError("fit: all hyperparameter starts failed to factorize");
    }
    return build_model(spec_from_log_params(config.family, best_params), train_inputs, targets,
                       noise_diag);
}

Prediction predict(const SurrogateModel& model, const Eigen::VectorXd& x) {
    if (x.size() != model.train_inputs.cols()) {
        throw InvalidInputError("predict: query dimension does not match training inputs");
    }
    const Eigen::Index n = model.train_inputs.rows();
    Eigen::VectorXd k_star(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k_star[i] = kernel_from_sq_distance(
            model.kernel, weighted_sq_distance(model.kernel, model.train_inputs.row(i), x));
    }
    Prediction p;
    p.mean = k_star.dot(model.alpha_vector);
    const Eigen::VectorXd v =
        model.chol_factor.triangularView<Eigen::Lower>().solve(k_star);
    p.variance = std::max(0.0, model.kernel.signal_variance - v.squaredNorm());
    return p;
}

} // namespace qsbo
