#ifndef QSBO_BENCHMARKS_HPP
#define QSBO_BENCHMARKS_HPP

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsbo/optimizer.hpp"

namespace qsbo {

struct BenchmarkFunction {
    std::string name;
    int dimension = 1;
    Domain domain;
    std::function<double(const std::vector<double>&)> evaluate;
    /// Dense-grid minimizer and value, populated when the registry is
    /// built rather than hardcoded.
    std::optional<std::pair<std::vector<double>, double>> known_optimum;
};

/// sin(3x) + x^2 - 0.7x on [-2, 2]; multimodal and non-convex.
double sinusoidal_quadratic(double x);

/// (6x - 2)^2 sin(12x - 4) on [0, 1].
double forrester(double x);

/// Branin with the standard constants on [-5, 10] x [0, 15]; three global
/// minima of equal value.
double branin(double x1, double x2);

/// Brute-force minimum over a uniform grid with `points_per_dim` points
/// along each axis (bounds included).
std::pair<std::vector<double>, double> grid_minimum(const BenchmarkFunction& fn,
                                                    int points_per_dim);

/// Registry keys: "sinq1d", "forrester", "branin".
const std::vector<BenchmarkFunction>& benchmark_registry();

/// Looks a function up by registry key; throws InvalidInputError if absent.
const BenchmarkFunction& find_benchmark(std::string_view key);

} // namespace qsbo

#endif // QSBO_BENCHMARKS_HPP
