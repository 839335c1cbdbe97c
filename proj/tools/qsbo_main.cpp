#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "qsbo/errors.hpp"
#include "qsbo/experiment.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    qsbo::ExperimentPlan plan;
    try {
        plan = qsbo::parse_args(args);
    } catch (const qsbo::UsageError& err) {
        std::cerr << err.what() << "\n";
        return 2;
    }

    try {
        const qsbo::ComparisonReport report = qsbo::run_experiment(plan);
        qsbo::emit_reports(report, plan.out_dir);
        std::cout << qsbo::format_report_tables(report);
        std::cout << "\nResults written to " << plan.out_dir.string() << "\n";
        if (!report.all_complete) {
            std::cerr << "some runs failed; see report.json for details\n";
            return 1;
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
