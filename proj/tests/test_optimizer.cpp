#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "noma/analysis.hpp"
#include "noma/constellation.hpp"
#include "noma/optimizer.hpp"
#include "test_util.hpp"

using namespace noma;

namespace {

SystemConfig budget_config(double b1, double b2, double noise_var = 1.0, int order = 2) {
    SystemConfig cfg;
    cfg.order = order;
    cfg.noise_var = noise_var;
    cfg.beta = {1.0, 1.0};
    cfg.power = {b1, b2};
    return cfg;
}

}  // namespace

TEST_CASE("delta1_dagger worked values") {
    CHECK(delta1_dagger(40.0, 1.0, 2) ==
          doctest::Approx(0.5 * (-42.0 + std::sqrt(8324.0))).epsilon(1e-15));
    CHECK(delta1_dagger(40.0, 1.0, 2) == doctest::Approx(24.617978911828175).epsilon(1e-14));
    CHECK(delta1_dagger(0.0, 1.0, 2) == 0.0);
    CHECK_THROWS_AS(delta1_dagger(1.0, 1.0, 1), std::domain_error);
    CHECK_THROWS_AS(delta1_dagger(-1.0, 1.0, 2), std::domain_error);
}

TEST_CASE("delta1_dagger is increasing in its argument") {
    for (int order : {2, 3, 4}) {
        for (double s2 : {0.1, 1.0, 7.5}) {
            double prev = delta1_dagger(0.0, s2, order);
            for (double t = 0.25; t < 2000.0; t *= 1.5) {
                const double v = delta1_dagger(t, s2, order);
                CHECK(v > prev);
                prev = v;
            }
        }
    }
}

TEST_CASE("solve_p3 case 1 worked example") {
    const DesignSolution sol = solve_p3(budget_config(50.0, 20.0));
    CHECK(sol.case_tag == CaseTag::Case1_Constraint2Tight);
    CHECK(sol.design.delta1 == doctest::Approx(24.617978911828175).epsilon(1e-12));
    CHECK(sol.design.delta2 == doctest::Approx(15.382021088171825).epsilon(1e-12));
    CHECK(sol.objective == doctest::Approx(1.6004385100445897).epsilon(1e-12));
    CHECK(sol.ratio_delta1_gap ==
          doctest::Approx(sol.ratio_delta2_gap).epsilon(1e-12));
    const auto slack = check_power_constraints(sol.design, budget_config(50.0, 20.0));
    CHECK(std::abs(slack.slack2) <= 1e-9 * 20.0);
    CHECK(slack.slack1 > 1e-3);
}

TEST_CASE("solve_p3 case 2 worked example") {
    const DesignSolution sol = solve_p3(budget_config(5.0, 20.0));
    CHECK(sol.case_tag == CaseTag::Case2_Constraint1Tight);
    CHECK(sol.design.delta1 == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(sol.design.delta2 ==
          doctest::Approx(0.5 * (-11.0 + std::sqrt(561.0))).epsilon(1e-14));
    CHECK(sol.design.delta2 == doctest::Approx(6.34271928232701).epsilon(1e-12));
    CHECK(sol.objective == doctest::Approx(1.57661084384791).epsilon(1e-12));
    const auto slack = check_power_constraints(sol.design, budget_config(5.0, 20.0));
    CHECK(std::abs(slack.slack1) <= 1e-12);
    CHECK(slack.slack2 == doctest::Approx(11.82864035883650).epsilon(1e-10));
}

TEST_CASE("solve_p3 is continuous at the case boundary") {
    // with b1 = 5, sigma2 = 1, M = 2 the boundary sits at b2 = (9+sqrt(561))/4
    const double b2_star = (9.0 + std::sqrt(561.0)) / 4.0;
    const DesignSolution lo = solve_p3(budget_config(5.0, b2_star * (1.0 - 1e-9)));
    const DesignSolution hi = solve_p3(budget_config(5.0, b2_star * (1.0 + 1e-9)));
    CHECK(lo.design.delta1 == doctest::Approx(hi.design.delta1).epsilon(1e-6));
    CHECK(lo.design.delta2 == doctest::Approx(hi.design.delta2).epsilon(1e-6));
    CHECK(lo.case_tag != hi.case_tag);
}

TEST_CASE("ratio balance, constraint activity and reduction across random configs") {
    std::mt19937_64 gen(707);
    for (int iter = 0; iter < 200; ++iter) {
        const int order = 2 + static_cast<int>(gen() % 3);
        SystemConfig cfg = test::random_config(gen, order);
        const DesignSolution sol = solve_p3(cfg);

        // certificate: both group ratios coincide
        CHECK(std::abs(sol.ratio_delta1_gap - sol.ratio_delta2_gap) <=
              1e-9 * std::max(1.0, sol.objective));

        // the tagged constraint is tight, the other is not violated
        const auto slack = check_power_constraints(sol.design, cfg);
        const double tol = 1e-9 * std::max(1.0, std::max(cfg.budget(0), cfg.budget(1)));
        CHECK(slack.slack1 >= -tol);
        CHECK(slack.slack2 >= -tol);
        if (sol.case_tag == CaseTag::Case1_Constraint2Tight) {
            CHECK(std::abs(slack.slack2) <= tol);
        } else {
            CHECK(std::abs(slack.slack1) <= tol);
        }

        // the two-ratio objective equals the full enumeration
        if (sol.design.delta2 > 1e-12) {
            const double full = min_ratio(sum_constellation(sol.design, cfg)).ratio;
            CHECK(sol.objective == doctest::Approx(full).epsilon(1e-12));
        }
    }
}

TEST_CASE("grid search validates input and reproduces the worked examples") {
    CHECK_THROWS_AS(grid_search_p3(budget_config(5.0, 20.0), 99), std::invalid_argument);

    for (const auto& cfg : {budget_config(50.0, 20.0), budget_config(5.0, 20.0)}) {
        const DesignSolution closed = solve_p3(cfg);
        const DesignSolution grid = grid_search_p3(cfg, 400);
        // the closed form is optimal: the grid can neither beat it nor fall
        // far below it
        CHECK(grid.objective <= closed.objective + 1e-9 * closed.objective);
        CHECK(grid.objective >= closed.objective * (1.0 - 2e-3));
        // the objective is quadratically flat at the optimum, so the argmax
        // may drift a few cells
        const double cell = 2.0 * cfg.budget(0) / (cfg.order - 1) / 400.0;
        CHECK(std::abs(grid.design.delta1 - closed.design.delta1) <= 4.0 * cell);
    }
}

TEST_CASE("grid refinement never loses ground") {
    const SystemConfig cfg = budget_config(5.0, 20.0);
    const double coarse = grid_search_p3(cfg, 200).objective;
    const double fine = grid_search_p3(cfg, 400).objective;  // contains the coarse grid
    CHECK(fine >= coarse - 1e-12);
}

TEST_CASE("grid active-constraint pattern matches the closed-form case tag") {
    std::mt19937_64 gen(808);
    int compared = 0;
    while (compared < 10) {
        SystemConfig cfg = test::random_config(gen, 3);
        const double u1 = 2.0 * cfg.budget(0);
        const double dagger = delta1_dagger(2.0 * cfg.budget(1), cfg.noise_var, 3);
        if (std::abs(dagger - u1) < 0.05 * u1) continue;  // skip near-boundary configs
        const DesignSolution closed = solve_p3(cfg);
        const DesignSolution grid = grid_search_p3(cfg, 150);
        CHECK(closed.case_tag == grid.case_tag);
        ++compared;
    }
}

TEST_CASE("MED worked example and dominance") {
    const SystemConfig cfg = budget_config(5.0, 20.0);
    const DesignSolution med = med_design(cfg);
    CHECK(med.design.delta1 == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(med.design.delta2 == doctest::Approx(10.0).epsilon(1e-14));
    const SumConstellation sum = sum_constellation(med.design, cfg);
    CHECK(sum.stats == std::vector<double>{1.0, 11.0, 21.0, 31.0});
    CHECK(med.objective == doctest::Approx(31.0 / 21.0).epsilon(1e-14));
    CHECK(med.objective < solve_p3(cfg).objective);
}

TEST_CASE("noise washes out every design") {
    const SystemConfig cfg = budget_config(5.0, 20.0, 1e9);
    CHECK(solve_p3(cfg).objective < 1.001);
    CHECK(solve_p3(cfg).objective > 1.0);
    CHECK(med_design(cfg).objective < 1.001);
}

TEST_CASE("optimized design dominates MED on random configs") {
    std::mt19937_64 gen(909);
    int strict = 0;
    const int total = 300;
    for (int iter = 0; iter < total; ++iter) {
        const int order = 2 + static_cast<int>(gen() % 3);
        SystemConfig cfg = test::random_config(gen, order);
        const double serm = solve_p3(cfg).objective;
        const double med = med_design(cfg).objective;
        CHECK(serm >= med - 1e-12);
        if (serm > med + 1e-9) ++strict;
    }
    CHECK(strict >= total - 5);
}

TEST_CASE("shifting offsets never improves the exact SSER") {
    std::mt19937_64 gen(1010);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int iter = 0; iter < 10; ++iter) {
        const int order = 2 + static_cast<int>(gen() % 3);
        SystemConfig cfg = test::random_config(gen, order);
        const DesignSolution base = solve_p3(cfg);
        const auto mean_terms = [&](const NestedDesign& d) {
            const double half = 0.5 * (order - 1);
            return std::pair<double, double>{half * d.spacing(0, order),
                                             half * d.spacing(1, order)};
        };
        const auto [m1, m2] = mean_terms(base.design);
        for (double alpha : {0.0, 0.5, 1.0}) {
            const double eps = 0.1 * std::min(cfg.budget(0), cfg.budget(1));
            const double q1 = alpha * eps, q2 = (1.0 - alpha) * eps;
            const double gamma =
                std::min({1.0, (cfg.budget(0) - q1) / m1, (cfg.budget(1) - eps) / m2});
            REQUIRE(gamma > 0.0);
            NestedDesign shifted{base.design.delta1 * gamma, base.design.delta2 * gamma,
                                 q1, q2};
            REQUIRE(check_power_constraints(shifted, cfg).feasible(1e-12));
            for (int n : {8, 32, 128}) {
                SystemConfig cfg_n = cfg;
                cfg_n.n_antennas = n;
                const double s0 = exact_sser(sum_constellation(base.design, cfg_n), n).sser;
                const double s1 = exact_sser(sum_constellation(shifted, cfg_n), n).sser;
                CHECK(s1 >= s0 - 1e-12);
            }
        }
    }
}
