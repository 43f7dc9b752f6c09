#ifndef NOMA_TESTS_TEST_UTIL_HPP
#define NOMA_TESTS_TEST_UTIL_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "noma/constellation.hpp"

namespace noma::test {

// Complementary form of the regularized lower incomplete gamma for integer
// shape: 1 - e^{-x} * sum_{m<n} x^m / m!. Numerically safe only where the
// result is not dominated by cancellation; used as an independent oracle for
// small n.
inline double naive_gamma_cdf(double x, int n) {
    double term = 1.0;
    double tail = 1.0;
    for (int m = 1; m < n; ++m) {
        term *= x / static_cast<double>(m);
        tail += term;
    }
    return 1.0 - std::exp(-x) * tail;
}

// One-sample Kolmogorov-Smirnov statistic scaled by sqrt(n), for samples
// already transformed through the hypothesized CDF (so the reference is
// uniform on [0,1]). Values above ~1.95 reject at roughly the 0.1% level.
inline double ks_uniform_scaled(std::vector<double> u) {
    std::sort(u.begin(), u.end());
    const double n = static_cast<double>(u.size());
    double d = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
        const double hi = (static_cast<double>(i) + 1.0) / n - u[i];
        const double lo = u[i] - static_cast<double>(i) / n;
        d = std::max(d, std::max(hi, lo));
    }
    return d * std::sqrt(n);
}

// Random feasible system for property tests: unit gains, budgets spread over
// three decades, noise over two.
inline SystemConfig random_config(std::mt19937_64& gen, int order) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    SystemConfig cfg;
    cfg.order = order;
    cfg.n_antennas = 8;
    cfg.noise_var = std::pow(10.0, -1.0 + 2.0 * unif(gen));
    cfg.beta = {0.5 + unif(gen), 0.5 + unif(gen)};
    const double p1 = std::pow(10.0, -1.0 + 2.5 * unif(gen));
    const double p2 = std::pow(10.0, -1.0 + 2.5 * unif(gen));
    cfg.power = {p1, p2};
    return cfg;
}

}  // namespace noma::test

#endif
