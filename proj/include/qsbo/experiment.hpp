#ifndef QSBO_EXPERIMENT_HPP
#define QSBO_EXPERIMENT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "qsbo/optimizer.hpp"
#include "qsbo/stats.hpp"

namespace qsbo {

/// The run matrix: functions x methods x n_runs paired seeds.
struct ExperimentPlan {
    std::vector<std::string> functions = {"sinq1d", "forrester", "branin"};
    std::vector<std::string> methods = {"qsbo", "random"};
    int n_runs = 20;
    std::uint64_t base_seed = 0;
    OptimizerConfig optimizer{};
    std::filesystem::path out_dir = "results";
};

/// All runs of one (function, method) pair.
struct CellResult {
    std::string function;
    std::string method;
    std::vector<RunResult> runs;
    std::vector<double> finals; ///< final_best per run, seed order
    SummaryStats summary;
    bool complete = false;
    std::vector<std::string> run_errors;
};

/// Paired qsbo-vs-random tests for one function.
struct FunctionTests {
    std::string function;
    TestResult t_test;
    TestResult wilcoxon;
};

struct ComparisonReport {
    ExperimentPlan plan;
    std::vector<CellResult> cells;
    std::vector<FunctionTests> tests;
    bool all_complete = false;
};

/// Executes the plan. Run i of every method uses seed base_seed + i, so
/// the two methods are paired seed-by-seed. Run failures are recorded in
/// the owning cell instead of aborting the experiment.
ComparisonReport run_experiment(const ExperimentPlan& plan);

/// Writes summary.csv, significance.csv, finals_<function>.csv,
/// convergence_<function>_<method>.csv, and report.json into `directory`.
/// Identical reports produce byte-identical files.
void emit_reports(const ComparisonReport& report, const std::filesystem::path& directory);

/// Parses CLI flags into a plan; throws UsageError on anything invalid.
/// `args` excludes the program name.
ExperimentPlan parse_args(const std::vector<std::string>& args);

/// Renders the summary and significance tables as printable text.
std::string format_report_tables(const ComparisonReport& report);

} // namespace qsbo

#endif // QSBO_EXPERIMENT_HPP
