#include "noma/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace noma {

double mu(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("mu: argument must be > 0");
    }
    const double u = x - 1.0;
    if (std::abs(u) < 1e-4) {
        // ln(1+u)/u expanded around u = 0; the dropped u^4/5 term is below
        // 2e-17 for |u| < 1e-4.
        return 1.0 - u * (0.5 - u * (1.0 / 3.0 - u * 0.25));
    }
    return std::log(x) / u;
}

DecisionThresholds compute_thresholds(const SumConstellation& sum) {
    DecisionThresholds th;
    if (sum.size() < 2) return th;
    th.bounds.reserve(sum.size() - 1);
    for (int l = 0; l + 1 < sum.size(); ++l) {
        const double lo = sum.stats[l];
        const double hi = sum.stats[l + 1];
        if (!(lo > 0.0) || !(hi > lo)) {
            throw std::invalid_argument("compute_thresholds: statistics must be positive ascending");
        }
        th.bounds.push_back(hi * mu(hi / lo));
    }
    return th;
}

Detection detect(double avg_power, const DecisionThresholds& thresholds,
                 const SumConstellation& sum) {
    if (sum.size() < 1 || thresholds.bounds.size() + 1 != static_cast<size_t>(sum.size())) {
        throw std::invalid_argument("detect: thresholds do not match constellation");
    }
    // Region l (1-based) is (d_{l-1}, d_l]; lower_bound finds the first
    // boundary >= avg_power, so an exact hit on d_l resolves to region l.
    const auto it = std::lower_bound(thresholds.bounds.begin(), thresholds.bounds.end(),
                                     avg_power);
    const int l = static_cast<int>(it - thresholds.bounds.begin()) + 1;
    return {l, sum.symbol_map[static_cast<size_t>(l) - 1]};
}

int detect_bruteforce(double y_norm_sq, int n_antennas, const SumConstellation& sum) {
    if (sum.size() < 1) {
        throw std::invalid_argument("detect_bruteforce: empty constellation");
    }
    if (n_antennas < 1) {
        throw std::invalid_argument("detect_bruteforce: n_antennas must be >= 1");
    }
    int best = 0;
    double best_metric = std::numeric_limits<double>::infinity();
    for (int l = 0; l < sum.size(); ++l) {
        const double c = sum.stats[l];
        const double metric = y_norm_sq / c + static_cast<double>(n_antennas) * std::log(c);
        if (metric < best_metric) {
            best_metric = metric;
            best = l;
        }
    }
    return best + 1;
}

}  // namespace noma
