#ifndef NOMA_DETECTOR_HPP
#define NOMA_DETECTOR_HPP

#include <utility>
#include <vector>

#include "noma/constellation.hpp"

namespace noma {

// mu(x) = ln(x) / (x - 1), continuously extended with mu(1) = 1. Defined for
// x > 0; throws std::domain_error otherwise. Strictly decreasing.
double mu(double x);

// Upper decision boundaries on the average receive power ||y||^2 / N.
// bounds[l-1] separates statistic l from l+1 (1-based):
//   d_l = c_{l+1} * mu(c_{l+1} / c_l),      c_l < d_l < c_{l+1}.
struct DecisionThresholds {
    std::vector<double> bounds;
};

DecisionThresholds compute_thresholds(const SumConstellation& sum);

// Maximum-likelihood decision: `index` is the 1-based rank of the detected
// sum statistic, `symbols` the decoded (user1, user2) point pair (0-based).
struct Detection {
    int index = 0;
    std::pair<int, int> symbols{0, 0};
};

// Threshold detector: statistic l is chosen when avg_power falls in
// (d_{l-1}, d_l], with d_0 = -inf and d_{M^2} = +inf.
Detection detect(double avg_power, const DecisionThresholds& thresholds,
                 const SumConstellation& sum);

// Reference detector: minimizes the exact negative log-likelihood
//   ||y||^2 / c_l + N * ln(c_l)
// over all statistics by direct search. Returns the 1-based index. Ties
// resolve to the smallest index. Used to validate `detect`.
int detect_bruteforce(double y_norm_sq, int n_antennas, const SumConstellation& sum);

}  // namespace noma

#endif
