#include "noma/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "noma/detector.hpp"

namespace noma {

namespace {

// Lower regularized series: P(a,x) = e^{-x} x^a / Gamma(a) * sum_k x^k / (a)_{k+1}.
double gamma_p_series(double a, double x, double log_prefactor) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int it = 0; it < 10000; ++it) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (term < sum * 1e-17) {
            return sum * std::exp(log_prefactor);
        }
    }
    throw std::runtime_error("chi2_cdf_G: series failed to converge");
}

// Upper regularized tail via the Lentz continued fraction:
// Q(a,x) = e^{-x} x^a / Gamma(a) * 1/(x+1-a- 1(1-a)/(x+3-a- ...)).
double gamma_q_contfrac(double a, double x, double log_prefactor) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) {
            return std::exp(log_prefactor) * h;
        }
    }
    throw std::runtime_error("chi2_cdf_G: continued fraction failed to converge");
}

}  // namespace

double chi2_cdf_G(double x, int n_antennas) {
    if (n_antennas < 1) {
        throw std::invalid_argument("chi2_cdf_G: n_antennas must be >= 1");
    }
    if (!(x >= 0.0)) {
        throw std::domain_error("chi2_cdf_G: x must be >= 0");
    }
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    const double a = static_cast<double>(n_antennas);
    const double log_prefactor = a * std::log(x) - x - std::lgamma(a);
    double p;
    if (x < a + 1.0) {
        p = gamma_p_series(a, x, log_prefactor);
    } else {
        p = 1.0 - gamma_q_contfrac(a, x, log_prefactor);
    }
    return std::clamp(p, 0.0, 1.0);
}

double pairwise_error_F(double t, int n_antennas) {
    if (!(t >= 1.0 - 1e-9)) {
        throw std::domain_error("pairwise_error_F: ratio must be >= 1");
    }
    t = std::max(t, 1.0);
    const double n = static_cast<double>(n_antennas);
    const double m = mu(t);
    const double f = 1.0 + chi2_cdf_G(n * m, n_antennas) - chi2_cdf_G(n * t * m, n_antennas);
    return std::clamp(f, 0.0, 1.0);
}

MinRatioReport min_ratio(const SumConstellation& sum) {
    MinRatioReport report;
    if (sum.size() < 2) {
        report.ratio = std::numeric_limits<double>::infinity();
        return report;
    }
    report.ratio = std::numeric_limits<double>::infinity();
    for (int l = 0; l + 1 < sum.size(); ++l) {
        if (!(sum.stats[l] > 0.0)) {
            throw std::invalid_argument("min_ratio: statistics must be positive");
        }
        const double r = sum.stats[l + 1] / sum.stats[l];
        if (r < report.ratio) {
            report.ratio = r;
            report.ell = l + 1;
            report.gap = sum.stats[l + 1] - sum.stats[l];
        }
    }
    return report;
}

std::vector<double> success_probs(const SumConstellation& sum, int n_antennas) {
    if (n_antennas < 1) {
        throw std::invalid_argument("success_probs: n_antennas must be >= 1");
    }
    const int m2 = sum.size();
    if (m2 < 1) {
        throw std::invalid_argument("success_probs: empty constellation");
    }
    if (m2 == 1) return {1.0};

    const double n = static_cast<double>(n_antennas);
    std::vector<double> probs(m2);
    // With r_l = c_{l+1}/c_l, the scaled decision boundaries seen from
    // statistic l are: upper d_l / c_l = r_l * mu(r_l), lower
    // d_{l-1} / c_l = mu(r_{l-1}) (the previous ratio's mu evaluated on this
    // side of the gap). The conditional law of ||y||^2 / c_l has CDF G(N x).
    std::vector<double> ratios(m2 - 1);
    for (int l = 0; l + 1 < m2; ++l) {
        if (!(sum.stats[l] > 0.0) || !(sum.stats[l + 1] > sum.stats[l])) {
            throw std::invalid_argument("success_probs: statistics must be positive ascending");
        }
        ratios[l] = sum.stats[l + 1] / sum.stats[l];
    }
    for (int l = 0; l < m2; ++l) {
        double upper = 1.0;
        double lower = 0.0;
        if (l + 1 < m2) {
            const double r = ratios[l];
            upper = chi2_cdf_G(n * r * mu(r), n_antennas);
        }
        if (l > 0) {
            const double r = ratios[l - 1];
            lower = chi2_cdf_G(n * mu(r), n_antennas);
        }
        probs[l] = std::max(0.0, upper - lower);
    }
    return probs;
}

SserReport exact_sser(const SumConstellation& sum, int n_antennas) {
    SserReport report;
    report.min_ratio = min_ratio(sum).ratio;
    report.success_probs = success_probs(sum, n_antennas);
    const int m2 = sum.size();
    if (m2 < 2) {
        report.sser = 0.0;
        return report;
    }
    double acc = 0.0;
    for (int l = 0; l + 1 < m2; ++l) {
        acc += pairwise_error_F(sum.stats[l + 1] / sum.stats[l], n_antennas);
    }
    report.sser = std::clamp(acc / static_cast<double>(m2), 0.0, 1.0);
    return report;
}

}  // namespace noma
