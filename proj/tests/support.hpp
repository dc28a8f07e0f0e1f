#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "tracelab/coeffs.hpp"
#include "tracelab/matrix.hpp"

namespace testing {

/// Composite Simpson on [0,1] with `intervals` (even) subintervals.
template <class F>
double simpson(F&& f, int intervals = 100000) {
    const double h = 1.0 / intervals;
    double s = f(0.0) + f(1.0);
    for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return s * h / 3.0;
}

inline tracelab::Coefficient random_coefficient(std::mt19937_64& rng, int degree, bool periodic = false,
                                                double scale = 1.0) {
    std::uniform_real_distribution<double> d(-scale, scale);
    std::vector<double> u(static_cast<std::size_t>(degree) + 1), w(static_cast<std::size_t>(degree));
    for (int j = 0; j <= degree; ++j) u[static_cast<std::size_t>(j)] = (periodic && j % 2) ? 0.0 : d(rng);
    for (int j = 1; j <= degree; ++j) w[static_cast<std::size_t>(j - 1)] = (periodic && j % 2) ? 0.0 : d(rng);
    return tracelab::Coefficient(u, w);
}

inline tracelab::Matrix random_symmetric(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
    std::normal_distribution<double> d(0.0, scale);
    tracelab::Matrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = d(rng);
    return a;
}

}  // namespace testing
