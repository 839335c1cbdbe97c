#include "qsbo/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qsbo/errors.hpp"
#include "qsbo/normal.hpp"

namespace qsbo {

double expected_improvement(double mean, double sd, double best_z, double s_floor) {
    if (sd < s_floor) {
        return 0.0;
    }
    const double gamma = (best_z - mean) / sd;
    return std::max(0.0, sd * (normal_pdf(gamma) + gamma * normal_cdf(gamma)));
}

double probability_of_improvement(double mean, double sd, double best_z, double s_floor) {
    if (sd < s_floor) {
        return mean < best_z ? 1.0 : 0.0;
    }
    return normal_cdf((best_z - mean) / sd);
}

double lower_confidence_bound(double mean, double sd, double kappa) {
    return mean - kappa * sd;
}

std::size_t select_next(const SurrogateModel& model, const Eigen::MatrixXd& candidates,
                        const AcquisitionSpec& spec, double best_z) {
    const Eigen::Index m = candidates.rows();
    if (m < 1) {
        throw InvalidInputError("select_next: candidate set is empty");
    }
    std::size_t best_index = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
        const Prediction p = predict(model, candidates.row(i));
        const double sd = std::sqrt(p.variance);
        double score = 0.0;
        switch (spec.kind) {
        case AcquisitionKind::kExpectedImprovement:
            score = expected_improvement(p.mean, sd, best_z, spec.s_floor);
            break;
        case AcquisitionKind::kProbabilityOfImprovement:
            score = probability_of_improvement(p.mean, sd, best_z, spec.s_floor);
            break;
        case AcquisitionKind::kLowerConfidenceBound:
            score = -lower_confidence_bound(p.mean, sd, spec.kappa);
            break;
        }
        // Strict comparison keeps the lowest index on ties.
        if (score > best_score) {
            best_score = score;
            best_index = static_cast<std::size_t>(i);
        }
    }
    return best_index;
}

} // namespace qsbo
