#ifndef NOMA_ANALYSIS_HPP
#define NOMA_ANALYSIS_HPP

#include <vector>

#include "noma/constellation.hpp"

namespace noma {

// Regularized lower incomplete gamma P(N, x): the CDF at 2x of a chi-square
// distribution with 2N degrees of freedom, equivalently the probability that
// a sum of N unit-mean exponentials is <= x. Integer shape N >= 1, x >= 0.
// Series expansion below the shape, continued fraction above; absolute error
// well under 1e-13 across N <= 1024.
double chi2_cdf_G(double x, int n_antennas);

// Exact pairwise decision error for two adjacent statistics with ratio
// t = c_{l+1} / c_l >= 1:
//   F(t) = 1 + G(N*mu(t)) - G(N*t*mu(t))
// which is the sum of the two one-sided threshold-crossing probabilities.
// Strictly decreasing in t, F(1) = 1. Values of t within one part in 1e9
// below 1 are clamped to 1; anything smaller throws std::domain_error.
double pairwise_error_F(double t, int n_antennas);

// Smallest adjacent ratio of the sum constellation and where it occurs.
// `ell` is the 1-based lower index of the binding gap, `gap` its width.
// A single-point constellation reports ratio = +inf, ell = 0, gap = 0.
struct MinRatioReport {
    double ratio = 0.0;
    int ell = 0;
    double gap = 0.0;
};

MinRatioReport min_ratio(const SumConstellation& sum);

// Exact per-statistic success probabilities P_{c,l} of the threshold
// detector under equiprobable signaling, l = 1..M^2. Interior statistics
// integrate the conditional density between both decision boundaries; the
// edge statistics have one boundary only. Degenerate M^2 = 1 returns {1}.
std::vector<double> success_probs(const SumConstellation& sum, int n_antennas);

// Exact system symbol error rate plus the per-statistic success breakdown
// and the minimum adjacent ratio:
//   sser = (1/M^2) * sum_{l=1}^{M^2-1} F(c_{l+1}/c_l) = 1 - mean_l P_{c,l}.
struct SserReport {
    double sser = 0.0;
    std::vector<double> success_probs;
    double min_ratio = 0.0;
};

SserReport exact_sser(const SumConstellation& sum, int n_antennas);

}  // namespace noma

#endif
