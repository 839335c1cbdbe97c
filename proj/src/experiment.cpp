#include "qsbo/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsbo/benchmarks.hpp"
#include "qsbo/errors.hpp"

namespace qsbo {

namespace {

// Fixed 10-significant-digit formatting keeps CSV output reproducible
// across platforms.
std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string acquisition_name(AcquisitionKind kind) {
    switch (kind) {
    case AcquisitionKind::kExpectedImprovement:
        return "ei";
    case AcquisitionKind::kProbabilityOfImprovement:
        return "pi";
    case AcquisitionKind::kLowerConfidenceBound:
        return "lcb";
    }
    return "ei";
}

std::string kernel_name(KernelFamily family) {
    return family == KernelFamily::kMatern52 ? "matern52" : "se";
}

const CellResult* find_cell(const ComparisonReport& report, const std::string& function,
                            const std::string& method) {
    for (const CellResult& cell : report.cells) {
        if (cell.function == function && cell.method == method) {
            return &cell;
        }
    }
    return nullptr;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    out << contents;
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

nlohmann::json summary_to_json(const SummaryStats& s) {
    return {{"mean", s.mean},   {"median", s.median}, {"std", s.std_dev},
            {"min", s.min},     {"max", s.max},       {"n", s.n}};
}

nlohmann::json test_to_json(const TestResult& t) {
    return {{"statistic", t.statistic},
            {"p_value", t.p_value},
            {"test_name", t.test_name},
            {"n_pairs", t.n_pairs}};
}

} // namespace

ComparisonReport run_experiment(const ExperimentPlan& plan) {
    if (plan.n_runs < 1) {
        throw InvalidInputError("run_experiment: n_runs must be at least 1");
    }
    if (plan.functions.empty() || plan.methods.empty()) {
        throw InvalidInputError("run_experiment: need at least one function and one method");
    }
    for (const std::string& m : plan.methods) {
        if (m != "qsbo" && m != "random") {
            throw InvalidInputError("run_experiment: unknown method '" + m + "'");
        }
    }

    ComparisonReport report;
    report.plan = plan;

    const int budget = plan.optimizer.n_init + plan.optimizer.n_iter;
    for (const std::string& fn_key : plan.functions) {
        const BenchmarkFunction& fn = find_benchmark(fn_key);
        for (const std::string& method : plan.methods) {
            CellResult cell;
            cell.function = fn_key;
            cell.method = method;
            for (int i = 0; i < plan.n_runs; ++i) {
                const std::uint64_t seed = plan.base_seed + static_cast<std::uint64_t>(i);
                try {
                    OptimizerConfig config = plan.optimizer;
                    config.seed = seed;
                    RunResult run = (method == "qsbo")
                                        ? qsbo_run(fn.evaluate, fn.domain, config)
                                        : random_search_run(fn.evaluate, fn.domain, budget, seed);
                    cell.finals.push_back(run.final_best);
                    cell.runs.push_back(std::move(run));
                } catch (const RunError& err) {
                    cell.run_errors.push_back("seed " + std::to_string(seed) + ": " + err.what());
                }
            }
            cell.complete = cell.run_errors.empty() &&
                            static_cast<int>(cell.runs.size()) == plan.n_runs;
            if (!cell.finals.empty()) {
                cell.summary = summarize(cell.finals);
            }
            report.cells.push_back(std::move(cell));
        }
    }

    report.all_complete = true;
    for (const CellResult& cell : report.cells) {
        report.all_complete = report.all_complete && cell.complete;
    }

    // Paired tests need both methods, completed, and at least two runs.
    if (plan.n_runs >= 2) {
        for (const std::string& fn_key : plan.functions) {
            const CellResult* qsbo_cell = find_cell(report, fn_key, "qsbo");
            const CellResult* random_cell = find_cell(report, fn_key, "random");
            if (qsbo_cell == nullptr || random_cell == nullptr || !qsbo_cell->complete ||
                !random_cell->complete) {
                continue;
            }
            try {
                FunctionTests tests;
                tests.function = fn_key;
                tests.t_test = paired_t_test(qsbo_cell->finals, random_cell->finals);
                tests.wilcoxon = wilcoxon_signed_rank(qsbo_cell->finals, random_cell->finals);
                report.tests.push_back(std::move(tests));
            } catch (const DegenerateDataError&) {
                // Identical finals on every seed admit no test; the function
                // simply gets no row in significance.csv.
            }
        }
    }
    return report;
}

void emit_reports(const ComparisonReport& report, const std::filesystem::path& directory) {
    std::filesystem::create_directories(directory);

    {
        std::string csv = "function,method,mean,median,std,min,max\n";
        for (const CellResult& cell : report.cells) {
            if (!cell.complete) {
                continue;
            }
            csv += cell.function + "," + cell.method + "," + format_number(cell.summary.mean) +
                   "," + format_number(cell.summary.median) + "," +
                   format_number(cell.summary.std_dev) + "," + format_number(cell.summary.min) +
                   "," + format_number(cell.summary.max) + "\n";
        }
        write_file(directory / "summary.csv", csv);
    }

    {
        std::string csv = "function,t_stat,p_t,W,p_wilcoxon\n";
        for (const FunctionTests& tests : report.tests) {
            csv += tests.function + "," + format_number(tests.t_test.statistic) + "," +
                   format_number(tests.t_test.p_value) + "," +
                   format_number(tests.wilcoxon.statistic) + "," +
                   format_number(tests.wilcoxon.p_value) + "\n";
        }
        write_file(directory / "significance.csv", csv);
    }

    for (const std::string& fn_key : report.plan.functions) {
        std::vector<const CellResult*> cells;
        for (const std::string& method : report.plan.methods) {
            const CellResult* cell = find_cell(report, fn_key, method);
            if (cell != nullptr && cell->complete) {
                cells.push_back(cell);
            }
        }
        if (cells.empty()) {
            continue;
        }
        std::string csv;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            csv += (c == 0 ? "" : ",") + cells[c]->method;
        }
        csv += "\n";
        for (int i = 0; i < report.plan.n_runs; ++i) {
            for (std::size_t c = 0; c < cells.size(); ++c) {
                csv += (c == 0 ? "" : ",") + format_number(cells[c]->finals[i]);
            }
            csv += "\n";
        }
        write_file(directory / ("finals_" + fn_key + ".csv"), csv);
    }

    for (const CellResult& cell : report.cells) {
        if (!cell.complete) {
            continue;
        }
        std::string csv;
        for (std::size_t r = 0; r < cell.runs.size(); ++r) {
            csv += (r == 0 ? "" : ",") + ("run" + std::to_string(r));
        }
        csv += "\n";
        const std::size_t rows = cell.runs.front().best_curve.size();
        for (std::size_t row = 0; row < rows; ++row) {
            for (std::size_t r = 0; r < cell.runs.size(); ++r) {
                csv += (r == 0 ? "" : ",") + format_number(cell.runs[r].best_curve[row]);
            }
            csv += "\n";
        }
        write_file(directory / ("convergence_" + cell.function + "_" + cell.method + ".csv"), csv);
    }

    nlohmann::json doc;
    doc["plan"] = {
        {"functions", report.plan.functions},
        {"methods", report.plan.methods},
        {"n_runs", report.plan.n_runs},
        {"base_seed", report.plan.base_seed},
        {"n_init", report.plan.optimizer.n_init},
        {"n_iter", report.plan.optimizer.n_iter},
        {"n_candidates", report.plan.optimizer.n_candidates},
        {"acquisition", acquisition_name(report.plan.optimizer.acquisition.kind)},
        {"kernel", kernel_name(report.plan.optimizer.kernel)},
        {"clip_epsilon", report.plan.optimizer.clip_epsilon},
        {"phi_floor", report.plan.optimizer.phi_floor},
    };
    doc["all_complete"] = report.all_complete;
    doc["cells"] = nlohmann::json::array();
    for (const CellResult& cell : report.cells) {
        nlohmann::json c;
        c["function"] = cell.function;
        c["method"] = cell.method;
        c["complete"] = cell.complete;
        c["finals"] = cell.finals;
        std::vector<std::uint64_t> seeds;
        for (const RunResult& run : cell.runs) {
            seeds.push_back(run.seed);
        }
        c["seeds"] = seeds;
        if (!cell.finals.empty()) {
            c["summary"] = summary_to_json(cell.summary);
        }
        if (!cell.run_errors.empty()) {
            c["errors"] = cell.run_errors;
        }
        doc["cells"].push_back(std::move(c));
    }
    doc["tests"] = nlohmann::json::array();
    for (const FunctionTests& tests : report.tests) {
        doc["tests"].push_back({{"function", tests.function},
                                {"t_test", test_to_json(tests.t_test)},
                                {"wilcoxon", test_to_json(tests.wilcoxon)}});
    }
    write_file(directory / "report.json", doc.dump(2) + "\n");
}

ExperimentPlan parse_args(const std::vector<std::string>& args) {
    ExperimentPlan plan;
    std::vector<std::string> functions;
    std::vector<std::string> methods;
    std::string acquisition = "ei";
    std::string kernel = "se";
    std::string out_dir = "results";

    std::vector<std::string> function_keys;
    for (const BenchmarkFunction& fn : benchmark_registry()) {
        function_keys.push_back(fn.name);
    }

    CLI::App app{"QS-BO benchmark experiment runner"};
    app.add_option("--function", functions, "benchmark function key (repeatable)")
        ->check(CLI::IsMember(function_keys));
    app.add_option("--method", methods, "optimizer to run (repeatable)")
        ->check(CLI::IsMember(std::vector<std::string>{"qsbo", "random"}));
    app.add_option("--runs", plan.n_runs, "independent runs per (function, method)")
        ->check(CLI::Range(1, std::numeric_limits<int>::max()));
    app.add_option("--seed", plan.base_seed, "base seed; run i uses base_seed + i");
    app.add_option("--n-init", plan.optimizer.n_init, "initial random evaluations")
        ->check(CLI::Range(1, std::numeric_limits<int>::max()));
    app.add_option("--n-iter", plan.optimizer.n_iter, "model-guided iterations")
        ->check(CLI::Range(0, std::numeric_limits<int>::max()));
    app.add_option("--candidates", plan.optimizer.n_candidates, "candidate points per iteration")
        ->check(CLI::Range(1, std::numeric_limits<int>::max()));
    app.add_option("--acquisition", acquisition, "acquisition function")
        ->check(CLI::IsMember(std::vector<std::string>{"ei", "pi", "lcb"}));
    app.add_option("--kernel", kernel, "GP kernel family")
        ->check(CLI::IsMember(std::vector<std::string>{"se", "matern52"}));
    app.add_option("--out", out_dir, "output directory for result files");

    std::vector<const char*> argv;
    argv.push_back("qsbo");
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        throw UsageError(app.help());
    } catch (const CLI::ParseError& err) {
        throw UsageError(std::string(err.what()));
    }

    if (!functions.empty()) {
        plan.functions = functions;
    }
    if (!methods.empty()) {
        plan.methods = methods;
    }
    if (acquisition == "pi") {
        plan.optimizer.acquisition.kind = AcquisitionKind::kProbabilityOfImprovement;
    } else if (acquisition == "lcb") {
        plan.optimizer.acquisition.kind = AcquisitionKind::kLowerConfidenceBound;
    } else {
        plan.optimizer.acquisition.kind = AcquisitionKind::kExpectedImprovement;
    }
    plan.optimizer.kernel =
        kernel == "matern52" ? KernelFamily::kMatern52 : KernelFamily::kSquaredExponential;
    plan.out_dir = out_dir;
    return plan;
}

std::string format_report_tables(const ComparisonReport& report) {
    std::ostringstream out;
    out << "Summary of final best values (" << report.plan.n_runs << " runs)\n";
    out << std::left << std::setw(12) << "function" << std::setw(9) << "method" << std::right
        << std::setw(13) << "mean" << std::setw(13) << "median" << std::setw(13) << "std"
        << std::setw(13) << "min" << std::setw(13) << "max" << "\n";
    for (const CellResult& cell : report.cells) {
        if (!cell.complete) {
            out << std::left << std::setw(12) << cell.function << std::setw(9) << cell.method
                << "  (incomplete: " << cell.run_errors.size() << " failed runs)\n";
            continue;
        }
        out << std::left << std::setw(12) << cell.function << std::setw(9) << cell.method
            << std::right << std::setw(13) << format_number(cell.summary.mean) << std::setw(13)
            << format_number(cell.summary.median) << std::setw(13)
            << format_number(cell.summary.std_dev) << std::setw(13)
            << format_number(cell.summary.min) << std::setw(13) << format_number(cell.summary.max)
            << "\n";
    }
    if (!report.tests.empty()) {
        out << "\nPaired significance tests (qsbo vs random)\n";
        out << std::left << std::setw(12) << "function" << std::right << std::setw(13) << "t_stat"
            << std::setw(13) << "p_t" << std::setw(13) << "W" << std::setw(13) << "p_wilcoxon"
            << "\n";
        for (const FunctionTests& tests : report.tests) {
            out << std::left << std::setw(12) << tests.function << std::right << std::setw(13)
                << format_number(tests.t_test.statistic) << std::setw(13)
                << format_number(tests.t_test.p_value) << std::setw(13)
                << format_number(tests.wilcoxon.statistic) << std::setw(13)
                << format_number(tests.wilcoxon.p_value) << "\n";
        }
    }
    return out.str();
}

} // namespace qsbo
