#include "qsbo/benchmarks.hpp"

#include <cmath>
#include <limits>

#include "qsbo/errors.hpp"

namespace qsbo {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_domain_1d(double x, double lo, double hi, const char* name) {
    if (!(x >= lo && x <= hi)) {
        throw InvalidInputError(std::string(name) + ": input outside domain");
    }
}

} // namespace

double sinusoidal_quadratic(double x) {
    check_domain_1d(x, -2.0, 2.0, "sinusoidal_quadratic");
    return std::sin(3.0 * x) + x * x - 0.7 * x;
}

double forrester(double x) {
    check_domain_1d(x, 0.0, 1.0, "forrester");
    const double a = 6.0 * x - 2.0;
    return a * a * std::sin(12.0 * x - 4.0);
}

double branin(double x1, double x2) {
    if (!(x1 >= -5.0 && x1 <= 10.0 && x2 >= 0.0 && x2 <= 15.0)) {
        throw InvalidInputError("branin: input outside domain");
    }
    constexpr double a = 1.0;
    const double b = 5.1 / (4.0 * kPi * kPi);
    const double c = 5.0 / kPi;
    constexpr double r = 6.0;
    constexpr double s = 10.0;
    const double t = 1.0 / (8.0 * kPi);
    const double inner = x2 - b * x1 * x1 + c * x1 - r;
    return a * inner * inner + s * (1.0 - t) * std::cos(x1) + s;
}

std::pair<std::vector<double>, double> grid_minimum(const BenchmarkFunction& fn,
                                                    int points_per_dim) {
    if (points_per_dim < 2) {
        throw InvalidInputError("grid_minimum: need at least two points per dimension");
    }
    const int d = fn.dimension;
    std::vector<int> index(d, 0);
    std::vector<double> x(d), best_x(d);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        for (int j = 0; j < d; ++j) {
            const auto& [lo, hi] = fn.domain.bounds[j];
            x[j] = lo + (hi - lo) * static_cast<double>(index[j]) /
                            static_cast<double>(points_per_dim - 1);
        }
        const double v = fn.evaluate(x);
        if (v < best) {
            best = v;
            best_x = x;
        }
        int j = 0;
        for (; j < d; ++j) {
            if (++index[j] < points_per_dim) {
                break;
            }
            index[j] = 0;
        }
        if (j == d) {
            break;
        }
    }
    return {best_x, best};
}

const std::vector<BenchmarkFunction>& benchmark_registry() {
    static const std::vector<BenchmarkFunction> registry = [] {
        std::vector<BenchmarkFunction> fns;

        BenchmarkFunction sinq;
        sinq.name = "sinq1d";
        sinq.dimension = 1;
        sinq.domain = Domain{{{-2.0, 2.0}}};
        sinq.evaluate = [](const std::vector<double>& x) { return sinusoidal_quadratic(x[0]); };
        fns.push_back(std::move(sinq));

        BenchmarkFunction forr;
        forr.name = "forrester";
        forr.dimension = 1;
        forr.domain = Domain{{{0.0, 1.0}}};
        forr.evaluate = [](const std::vector<double>& x) { return forrester(x[0]); };
        fns.push_back(std::move(forr));

        BenchmarkFunction bran;
        bran.name = "branin";
        bran.dimension = 2;
        bran.domain = Domain{{{-5.0, 10.0}, {0.0, 15.0}}};
        bran.evaluate = [](const std::vector<double>& x) { return branin(x[0], x[1]); };
        fns.push_back(std::move(bran));

        for (BenchmarkFunction& fn : fns) {
            fn.known_optimum = grid_minimum(fn, fn.dimension == 1 ? 10000 : 500);
        }
        return fns;
    }();
    return registry;
}

const BenchmarkFunction& find_benchmark(std::string_view key) {
    for (const BenchmarkFunction& fn : benchmark_registry()) {
        if (fn.name == key) {
            return fn;
        }
    }
    throw InvalidInputError("unknown benchmark function: " + std::string(key));
}

} // namespace qsbo
