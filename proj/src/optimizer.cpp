#include "noma/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "noma/analysis.hpp"

namespace noma {

namespace {

void require_designable(const SystemConfig& cfg) {
    cfg.validate();
    if (cfg.order < 2) {
        throw std::domain_error("optimizer: order must be >= 2");
    }
    if (!(cfg.budget(0) > 0.0) || !(cfg.budget(1) > 0.0)) {
        throw InfeasibleError("optimizer: power budgets must be positive");
    }
}

// Ratio-balance quadratic for the residual user-2 gap when delta1 is pinned
// at its cap. Written in the aggregate variable dt2 = (M-1)*delta2 with
// k = (M-1)*u1 + s2: dt2^2 + dt2*k - u1*k = 0. Used as an independent check
// of the transcribed radical below.
double case2_delta2_balance(double u1, double noise_var, int order) {
    const double m1 = static_cast<double>(order - 1);
    const double k = m1 * u1 + noise_var;
    const double dt2 = 0.5 * (-k + std::sqrt(k * k + 4.0 * u1 * k));
    return dt2 / m1;
}

// Transcribed closed form for the same root:
//   delta2 = [-(u1 + s2/(M-1)) + sqrt((u1 + s2/(M-1))^2
//             + 4*(u1^2/(M-1) + u1*s2/(M-1)^2))]/2.
double case2_delta2_radical(double u1, double noise_var, int order) {
    const double m1 = static_cast<double>(order - 1);
    const double b = u1 + noise_var / m1;
    const double disc = b * b + 4.0 * (u1 * u1 / m1 + u1 * noise_var / (m1 * m1));
    return 0.5 * (-b + std::sqrt(disc));
}

}  // namespace

std::pair<double, double> p3_group_ratios(const NestedDesign& design,
                                          double noise_var, int order) {
    if (order < 2) {
        throw std::domain_error("p3_group_ratios: order must be >= 2");
    }
    if (!(noise_var > 0.0)) {
        throw std::domain_error("p3_group_ratios: noise_var must be > 0");
    }
    const double m1 = static_cast<double>(order - 1);
    const double d1 = design.delta1;
    const double d2 = design.delta2;
    // Largest statistic whose upward gap is delta1, and largest whose upward
    // gap is delta2; both ratios decrease along each gap group, so these two
    // are the only candidates for the overall minimum.
    const double top1 = static_cast<double>(order) * m1 * d1 + m1 * d2 + noise_var;
    const double top2 = m1 * m1 * d1 + m1 * d2 + noise_var;
    return {top1 / (top1 - d1), top2 / (top2 - d2)};
}

double delta1_dagger(double delta2_tilde, double noise_var, int order) {
    if (order < 2) {
        throw std::domain_error("delta1_dagger: order must be >= 2");
    }
    if (!(delta2_tilde >= 0.0) || !(noise_var > 0.0)) {
        throw std::domain_error("delta1_dagger: arguments out of range");
    }
    const double m1 = static_cast<double>(order - 1);
    const double b = delta2_tilde + noise_var + noise_var / m1;
    const double disc =
        b * b + 4.0 * (delta2_tilde * delta2_tilde + delta2_tilde * noise_var) / m1;
    return std::max(0.0, 0.5 * (-b + std::sqrt(disc)));
}

DesignSolution solve_p3(const SystemConfig& cfg) {
    require_designable(cfg);
    const double m1 = static_cast<double>(cfg.order - 1);
    const double u1 = 2.0 * cfg.budget(0);
    const double u2 = 2.0 * cfg.budget(1);

    DesignSolution sol;
    const double dagger = delta1_dagger(u2, cfg.noise_var, cfg.order);
    if (dagger <= u1) {
        sol.design.delta1 = dagger / m1;
        sol.design.delta2 = u2 / m1 - dagger;
        sol.case_tag = CaseTag::Case1_Constraint2Tight;
    } else {
        sol.design.delta1 = u1 / m1;
        const double d2 = case2_delta2_radical(u1, cfg.noise_var, cfg.order);
        const double d2_check = case2_delta2_balance(u1, cfg.noise_var, cfg.order);
        if (std::abs(d2 - d2_check) > 1e-9 * std::max(1.0, std::abs(d2))) {
            throw std::logic_error("solve_p3: radical and balance roots disagree");
        }
        sol.design.delta2 = d2;
        sol.case_tag = CaseTag::Case2_Constraint1Tight;
    }
    sol.design.delta2 = std::max(0.0, sol.design.delta2);
    const auto [r1, r2] = p3_group_ratios(sol.design, cfg.noise_var, cfg.order);
    sol.ratio_delta1_gap = r1;
    sol.ratio_delta2_gap = r2;
    sol.objective = std::min(r1, r2);
    return sol;
}

DesignSolution grid_search_p3(const SystemConfig& cfg, int resolution) {
    require_designable(cfg);
    if (resolution < 100) {
        throw std::invalid_argument("grid_search_p3: resolution must be >= 100");
    }
    const double m1 = static_cast<double>(cfg.order - 1);
    const double b1 = cfg.budget(0);
    const double b2 = cfg.budget(1);
    const double d1_max = 2.0 * b1 / m1;
    const double d2_max = 2.0 * b2 / m1;
    const double feas_tol = 1e-12 * std::max(1.0, std::max(b1, b2));

    const int m = cfg.order;
    const int m2 = m * m;
    std::vector<double> stats(static_cast<size_t>(m2));

    DesignSolution best;
    best.objective = -1.0;
    for (int i = 0; i <= resolution; ++i) {
        const double d1 = d1_max * static_cast<double>(i) / resolution;
        const double mean1 = 0.5 * m1 * d1;
        if (mean1 > b1 + feas_tol) continue;
        for (int j = 0; j <= resolution; ++j) {
            const double d2 = d2_max * static_cast<double>(j) / resolution;
            const double step2 = m1 * d1 + d2;
            const double mean2 = 0.5 * m1 * step2;
            if (mean2 > b2 + feas_tol) break;  // mean2 increases with j

            int idx = 0;
            for (int a = 0; a < m; ++a) {
                for (int b = 0; b < m; ++b) {
                    stats[idx++] = static_cast<double>(a) * d1 +
                                   static_cast<double>(b) * step2 + cfg.noise_var;
                }
            }
            std::sort(stats.begin(), stats.end());
            double obj = std::numeric_limits<double>::infinity();
            for (int l = 0; l + 1 < m2; ++l) {
                obj = std::min(obj, stats[l + 1] / stats[l]);
            }
            // Strict improvement keeps the first (lexicographically smallest)
            // maximizer encountered by the row-major scan.
            if (obj > best.objective) {
                best.objective = obj;
                best.design.delta1 = d1;
                best.design.delta2 = d2;
            }
        }
    }

    const auto slack = check_power_constraints(best.design, cfg);
    best.case_tag = (slack.slack1 <= slack.slack2) ? CaseTag::Case2_Constraint1Tight
                                                   : CaseTag::Case1_Constraint2Tight;
    const auto [r1, r2] = p3_group_ratios(best.design, cfg.noise_var, cfg.order);
    best.ratio_delta1_gap = r1;
    best.ratio_delta2_gap = r2;
    return best;
}

DesignSolution med_design(const SystemConfig& cfg) {
    require_designable(cfg);
    const double m1 = static_cast<double>(cfg.order - 1);
    const double cap1 = 2.0 * cfg.budget(0) / m1;
    const double cap2 = 2.0 * cfg.budget(1) / (static_cast<double>(cfg.order) * m1);
    DesignSolution sol;
    sol.design.delta1 = std::min(cap1, cap2);
    sol.design.delta2 = sol.design.delta1;
    sol.case_tag = (cap1 <= cap2) ? CaseTag::Case2_Constraint1Tight
                                  : CaseTag::Case1_Constraint2Tight;
    const auto [r1, r2] = p3_group_ratios(sol.design, cfg.noise_var, cfg.order);
    sol.ratio_delta1_gap = r1;
    sol.ratio_delta2_gap = r2;
    sol.objective = min_ratio(sum_constellation(sol.design, cfg)).ratio;
    return sol;
}

}  // namespace noma
