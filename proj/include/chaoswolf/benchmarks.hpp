#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chaoswolf/gwo.hpp"

namespace chaoswolf::benchmarks {

inline constexpr double kPi = 3.14159265358979323846;

inline double sphere(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

inline double rastrigin(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v - 10.0 * std::cos(2.0 * kPi * v) + 10.0;
    return s;
}

inline double ackley(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double sq = 0.0, cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(2.0 * kPi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 +
           std::exp(1.0);
}

inline double griewank(std::span<const double> x) {
    double s = 0.0, p = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += x[i] * x[i] / 4000.0;
        p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return s - p + 1.0;
}

inline double goldstein_price(double x, double y) {
    const double a = 1.0 + (x + y + 1.0) * (x + y + 1.0) *
                               (19.0 - 14.0 * x + 3.0 * x * x - 14.0 * y +
                                6.0 * x * y + 3.0 * y * y);
    const double b = 30.0 + (2.0 * x - 3.0 * y) * (2.0 * x - 3.0 * y) *
                                (18.0 - 32.0 * x + 12.0 * x * x + 48.0 * y -
                                 36.0 * x * y + 27.0 * y * y);
    return a * b;
}

/// Product of the coordinates reduced mod 60000; maximized, the best
/// reachable values sit just below the modulus.
inline double product_mod(std::span<const double> x) {
    double p = 1.0;
    for (double v : x) p *= v;
    return p - 60000.0 * std::floor(p / 60000.0);
}

/// Position-based success: the squared distance to some registered optimum is
/// within 1e-4 of the box width. Assumes a uniform box, which all registered
/// problems use.
inline bool success_check(std::span<const double> obtained,
                          const std::vector<std::vector<double>>& optima,
                          const gwo::SearchSpace& space) {
    if (optima.empty())
        throw std::invalid_argument("success check needs at least one registered optimum");
    const double threshold = (space.upper[0] - space.lower[0]) * 1e-4;
    for (const auto& star : optima) {
        if (star.size() != obtained.size())
            throw std::invalid_argument("optimum dimension does not match the candidate");
        double d2 = 0.0;
        for (std::size_t j = 0; j < star.size(); ++j) {
            const double d = obtained[j] - star[j];
            d2 += d * d;
        }
        if (d2 <= threshold) return true;
    }
    return false;
}

struct BenchmarkSpec {
    std::string name;
    std::string description;
    gwo::ObjectiveSpec objective;
    std::vector<std::vector<double>> optima; // empty when success is value-based
    std::optional<double> success_min_value; // value-based success threshold
};

namespace detail {

inline std::vector<BenchmarkSpec> build_registry() {
    std::vector<BenchmarkSpec> specs;

    const auto add = [&](std::string name, std::string desc,
                         double (*fn)(std::span<const double>), std::size_t dim,
                         double lo, double hi, double best,
                         std::vector<double> optimum) {
        BenchmarkSpec s;
        s.name = std::move(name);
        s.description = std::move(desc);
        s.objective.evaluate = [fn](std::span<const double> x) { return fn(x); };
        s.objective.sense = gwo::Sense::Minimize;
        s.objective.space = gwo::SearchSpace::box(dim, lo, hi);
        s.objective.known_best_value = best;
        s.objective.known_best_position = optimum;
        s.optima.push_back(std::move(optimum));
        specs.push_back(std::move(s));
    };

    add("f1", "rastrigin", rastrigin, 30, -5.12, 5.12, 0.0, std::vector<double>(30, 0.0));
    add("f2", "ackley", ackley, 30, -32.0, 32.0, 0.0, std::vector<double>(30, 0.0));
    add("f3", "sphere", sphere, 30, -100.0, 100.0, 0.0, std::vector<double>(30, 0.0));

    {
        BenchmarkSpec s;
        s.name = "f4";
        s.description = "goldstein-price";
        s.objective.evaluate = [](std::span<const double> x) {
            return goldstein_price(x[0], x[1]);
        };
        s.objective.sense = gwo::Sense::Minimize;
        s.objective.space = gwo::SearchSpace::box(2, -2.0, 2.0);
        s.objective.known_best_value = 3.0;
        s.objective.known_best_position = std::vector<double>{0.0, -1.0};
        s.optima.push_back({0.0, -1.0});
        specs.push_back(std::move(s));
    }

    add("f5", "griewank", griewank, 30, -600.0, 600.0, 0.0, std::vector<double>(30, 0.0));

    {
        BenchmarkSpec s;
        s.name = "f6";
        s.description = "product-mod";
        s.objective.evaluate = [](std::span<const double> x) { return product_mod(x); };
        s.objective.sense = gwo::Sense::Maximize;
        s.objective.space = gwo::SearchSpace::box(5, 1.0, 10.0);
        s.objective.known_best_value = 60000.0; // supremum, not attained
        s.success_min_value = 59998.0;
        specs.push_back(std::move(s));
    }

    return specs;
}

} // namespace detail

inline const std::vector<BenchmarkSpec>& all() {
    static const std::vector<BenchmarkSpec> registry = detail::build_registry();
    return registry;
}

inline const BenchmarkSpec* find(std::string_view name) {
    for (const auto& s : all())
        if (s.name == name) return &s;
    return nullptr;
}

/// Success for a finished run on a registered benchmark: position-based when
/// optima are registered, value-based otherwise.
inline bool run_succeeded(const BenchmarkSpec& spec, std::span<const double> position,
                          double value) {
    if (!spec.optima.empty())
        return success_check(position, spec.optima, spec.objective.space);
    if (spec.success_min_value)
        return spec.objective.sense == gwo::Sense::Maximize
                   ? value >= *spec.success_min_value
                   : value <= *spec.success_min_value;
    throw std::invalid_argument("benchmark has no success rule");
}

} // namespace chaoswolf::benchmarks
