#ifndef QSBO_ACQUISITION_HPP
#define QSBO_ACQUISITION_HPP

#include <cstddef>

#include <Eigen/Dense>

#include "qsbo/surrogate.hpp"

namespace qsbo {

enum class AcquisitionKind {
    kExpectedImprovement,
    kProbabilityOfImprovement,
    kLowerConfidenceBound,
};

struct AcquisitionSpec {
    AcquisitionKind kind = AcquisitionKind::kExpectedImprovement;
    double kappa = 2.0;     ///< exploration weight, LCB only
    double s_floor = 1e-12; ///< below this sd the posterior is treated as degenerate
};

/// E[max(best_z - Z, 0)] for Z ~ Normal(mean, sd^2), minimization form:
/// sd * (phi(g) + g * Phi(g)) with g = (best_z - mean)/sd. Zero when the
/// posterior is degenerate (sd below the floor).
double expected_improvement(double mean, double sd, double best_z, double s_floor = 1e-12);

/// Phi((best_z - mean)/sd); degenerate posterior collapses to 0/1.
double probability_of_improvement(double mean, double sd, double best_z, double s_floor = 1e-12);

/// mean - kappa * sd. To be minimized; select_next negates it.
double lower_confidence_bound(double mean, double sd, double kappa);

/// Scores every candidate row under the spec and returns the index of the
/// maximizer, ties broken by lowest index. Deterministic given inputs.
std::size_t select_next(const SurrogateModel& model, const Eigen::MatrixXd& candidates,
                        const AcquisitionSpec& spec, double best_z);

} // namespace qsbo

#endif // QSBO_ACQUISITION_HPP
