#ifndef QSBO_OPTIMIZER_HPP
#define QSBO_OPTIMIZER_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsbo/acquisition.hpp"
#include "qsbo/surrogate.hpp"

namespace qsbo {

/// Axis-aligned search box.
struct Domain {
    std::vector<std::pair<double, double>> bounds; ///< (lower, upper) per dimension

    int dimension() const { return static_cast<int>(bounds.size()); }
};

struct OptimizerConfig {
    int n_init = 5;          ///< initial uniform random evaluations
    int n_iter = 30;         ///< model-guided iterations after initialization
    int n_candidates = 5000; ///< fresh uniform candidates per iteration
    AcquisitionSpec acquisition{};
    KernelFamily kernel = KernelFamily::kSquaredExponential;
    double clip_epsilon = 1e-6;
    double phi_floor = 1e-10;
    std::uint64_t seed = 0;
};

/// One evaluated point. Rank and latent fields reflect the final
/// rank computation over the whole trajectory.
struct TrialRecord {
    std::vector<double> input;
    double value = 0.0;
    int rank = 0;
    double z = 0.0;
    double z_variance = 0.0;
};

struct RunResult {
    std::string method;
    std::uint64_t seed = 0;
    std::vector<TrialRecord> trials;
    std::vector<double> best_curve; ///< running minimum, one entry per evaluation
    double final_best = 0.0;
    std::vector<double> final_best_input;
};

/// Aborts a run, carrying whatever trajectory was completed.
class RunError : public std::runtime_error {
public:
    RunError(const std::string& what, RunResult partial)
        : std::runtime_error(what), partial_result(std::move(partial)) {}

    RunResult partial_result;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Draws `budget` points i.i.d. uniform over the box and tracks the best.
/// Shares the initialization RNG stream with qsbo_run, so a QS-BO run
/// with n_iter = 0 queries exactly the same points.
RunResult random_search_run(const Objective& objective, const Domain& domain, int budget,
                            std::uint64_t seed);

/// The QS-BO loop: after n_init random evaluations, each iteration
/// recomputes ranks and latent targets over all points, refits the GP,
/// scores n_candidates fresh uniform candidates with the acquisition, and
/// evaluates the winner. Deterministic given the config seed.
RunResult qsbo_run(const Objective& objective, const Domain& domain, const OptimizerConfig& config);

} // namespace qsbo

#endif // QSBO_OPTIMIZER_HPP
