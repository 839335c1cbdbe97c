#include "qsbo/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "qsbo/errors.hpp"
#include "qsbo/rank_transform.hpp"
#include "qsbo/rng.hpp"

namespace qsbo {

namespace {

void validate_domain(const Domain& domain) {
    if (domain.bounds.empty()) {
        throw InvalidInputError("domain must have at least one dimension");
    }
    for (const auto& [lo, hi] : domain.bounds) {
        if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
            throw InvalidInputError("domain bounds must satisfy lower < upper and be finite");
        }
    }
}

std::vector<double> sample_point(std::mt19937_64& gen, const Domain& domain) {
    std::vector<double> x(domain.bounds.size());
    for (std::size_t j = 0; j < domain.bounds.size(); ++j) {
        x[j] = rng::uniform_in(gen, domain.bounds[j].first, domain.bounds[j].second);
    }
    return x;
}

double to_unit(double x, double lo, double hi) { return (x - lo) / (hi - lo); }

// Fills rank/z/variance fields from a final pass over all values and
// derives the best-so-far curve.
void finalize_result(RunResult& result, const RankTransformOptions& opts) {
    if (result.trials.empty()) {
        return;
    }
    std::vector<double> values;
    values.reserve(result.trials.size());
    for (const TrialRecord& t : result.trials) {
        values.push_back(t.value);
    }
    const std::vector<int> ranks = compute_ranks(values);
    const std::vector<LatentTarget> latents = build_latent_targets(values, opts);
    result.best_curve.clear();
    result.best_curve.reserve(values.size());
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        result.trials[i].rank = ranks[i];
        result.trials[i].z = latents[i].z;
        result.trials[i].z_variance = latents[i].variance;
        if (values[i] < best) {
            best = values[i];
            best_index = i;
        }
        result.best_curve.push_back(best);
    }
    result.final_best = best;
    result.final_best_input = result.trials[best_index].input;
}

// Evaluates the objective, appending the trial; aborts the run on a
// non-finite value (benchmark objectives are total, so this flags a
// harness bug rather than something to impute around).
void evaluate_into(const Objective& objective, const std::vector<double>& x, RunResult& result,
                   const RankTransformOptions& opts) {
    const double value = objective(x);
    if (!std::isfinite(value)) {
        finalize_result(result, opts);
        throw RunError("objective returned a non-finite value; run aborted", result);
    }
    TrialRecord trial;
    trial.input = x;
    trial.value = value;
    result.trials.push_back(std::move(trial));
}

} // namespace

RunResult random_search_run(const Objective& objective, const Domain& domain, int budget,
                            std::uint64_t seed) {
    validate_domain(domain);
    if (budget < 1) {
        throw InvalidInputError("random_search_run: budget must be at least 1");
    }
    RunResult result;
    result.method = "random";
    result.seed = seed;

    const RankTransformOptions opts{};
    std::mt19937_64 gen = rng::make_stream(seed, rng::kInitStream);
    for (int i = 0; i < budget; ++i) {
        evaluate_into(objective, sample_point(gen, domain), result, opts);
    }
    finalize_result(result, opts);
    return result;
}

RunResult qsbo_run(const Objective& objective, const Domain& domain, const OptimizerConfig& config) {
    validate_domain(domain);
    if (config.n_init < 1 || config.n_iter < 0 || config.n_candidates < 1) {
        throw InvalidInputError("qsbo_run: require n_init >= 1, n_iter >= 0, n_candidates >= 1");
    }
    const int d = domain.dimension();
    const RankTransformOptions opts{config.clip_epsilon, config.phi_floor, false};

    RunResult result;
    result.method = "qsbo";
    result.seed = config.seed;

    std::mt19937_64 init_gen = rng::make_stream(config.seed, rng::kInitStream);
    std::mt19937_64 cand_gen = rng::make_stream(config.seed, rng::kCandidateStream);
    std::mt19937_64 hyper_gen = rng::make_stream(config.seed, rng::kHyperStream);

    for (int i = 0; i < config.n_init; ++i) {
        evaluate_into(objective, sample_point(init_gen, domain), result, opts);
    }

    for (int iter = 0; iter < config.n_iter; ++iter) {
        const int n = static_cast<int>(result.trials.size());

        std::vector<double> values(n);
        Eigen::MatrixXd inputs(n, d);
        for (int i = 0; i < n; ++i) {
            values[i] = result.trials[i].value;
            for (int j = 0; j < d; ++j) {
                inputs(i, j) = to_unit(result.trials[i].input[j], domain.bounds[j].first,
                                       domain.bounds[j].second);
            }
        }

        // Ranks are recomputed from scratch over all points each iteration.
        const std::vector<LatentTarget> latents = build_latent_targets(values, opts);
        Eigen::VectorXd targets(n), noise(n);
        for (int i = 0; i < n; ++i) {
            targets[i] = latents[i].z;
            noise[i] = latents[i].variance;
        }

        SurrogateFitConfig fit_config;
        fit_config.family = config.kernel;
        fit_config.seed = hyper_gen();

        SurrogateModel model;
        try {
            model = fit(inputs, targets, noise, fit_config);
        } catch (const NumericalError& err) {
            finalize_result(result, opts);
            throw RunError(std::string("surrogate fit failed: ") + err.what(), result);
        }

        // Plug-in incumbent: the best posterior mean over evaluated points.
        // The raw min_i z_i drifts like probit(0.5/n) as n grows, while the
        // posterior mean at the incumbent stays shrunk by the extreme-rank
        // noise; an incumbent the model itself cannot reach would push EI
        // into its far tail and the loop into pure exploration.
        double best_z = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            best_z = std::min(best_z, predict(model, inputs.row(i)).mean);
        }

        // Fresh uniform candidates; the surrogate sees them in unit-cube
        // coordinates, the objective in original coordinates.
        Eigen::MatrixXd cand_unit(config.n_candidates, d);
        std::vector<std::vector<double>> cand_raw(config.n_candidates,
                                                  std::vector<double>(d));
        for (int i = 0; i < config.n_candidates; ++i) {
            for (int j = 0; j < d; ++j) {
                const double u = rng::uniform01(cand_gen);
                const auto& [lo, hi] = domain.bounds[j];
                cand_unit(i, j) = u;
                cand_raw[i][j] = lo + u * (hi - lo);
            }
        }

        const std::size_t pick = select_next(model, cand_unit, config.acquisition, best_z);
        evaluate_into(objective, cand_raw[pick], result, opts);
    }

    finalize_result(result, opts);
    return result;
}

} // namespace qsbo
