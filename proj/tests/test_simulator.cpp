#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "noma/analysis.hpp"
#include "noma/constellation.hpp"
#include "noma/optimizer.hpp"
#include "noma/rng.hpp"
#include "noma/simulator.hpp"
#include "test_util.hpp"

using namespace noma;

namespace {

SystemConfig asym_config(int n_antennas) {
    SystemConfig cfg;
    cfg.order = 2;
    cfg.noise_var = 1.0;
    cfg.beta = {1.0, 1.0};
    cfg.power = {5.0, 20.0};
    cfg.n_antennas = n_antennas;
    return cfg;
}

}  // namespace

TEST_CASE("counter generator known-answer vectors") {
    // 10-round 4x32 configuration, all-zero and all-ones inputs, plus a
    // mixed-word vector; values from the published reference tables.
    {
        Philox4x32 rng(0, 0, 0);
        CHECK(rng.next_u32() == 0x6627e8d5u);
        CHECK(rng.next_u32() == 0xe169c58du);
        CHECK(rng.next_u32() == 0xbc57ac4cu);
        CHECK(rng.next_u32() == 0x9b00dbd8u);
    }
    {
        Philox4x32 rng(0xffffffffffffffffULL, 0xffffffffffffffffULL, 0xffffffffffffffffULL);
        CHECK(rng.next_u32() == 0x408f276du);
        CHECK(rng.next_u32() == 0x41c83b0eu);
        CHECK(rng.next_u32() == 0xa20bc7c6u);
        CHECK(rng.next_u32() == 0x6d5451fdu);
    }
    {
        Philox4x32 rng(0x299f31d0a4093822ULL, 0x85a308d3243f6a88ULL, 0x0370734413198a2eULL);
        CHECK(rng.next_u32() == 0xd16cfe09u);
        CHECK(rng.next_u32() == 0x94fdccebu);
        CHECK(rng.next_u32() == 0x5001e420u);
        CHECK(rng.next_u32() == 0x24126ea1u);
    }
}

TEST_CASE("streams are reproducible and distinct") {
    Philox4x32 a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool same_c = true, same_d = true;
    for (int i = 0; i < 64; ++i) {
        const auto va = a.next_u64();
        CHECK(va == b.next_u64());
        same_c = same_c && (va == c.next_u64());
        same_d = same_d && (va == d.next_u64());
    }
    CHECK_FALSE(same_c);
    CHECK_FALSE(same_d);
}

TEST_CASE("uniform and exponential moments") {
    Philox4x32 rng(2024, 0);
    const int n = 100000;
    double su = 0.0, se = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        su += u;
        se += rng.next_exponential();
    }
    CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(se / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("normal pairs have the right first moments") {
    Philox4x32 rng(5, 0);
    const int n = 50000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto [a, b] = rng.next_normal_pair();
        s += a + b;
        s2 += a * a + b * b;
    }
    CHECK(std::abs(s / (2 * n)) < 0.02);
    CHECK(s2 / (2 * n) == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("statistic trial has the conditional gamma law") {
    Philox4x32 rng(99, 0);
    const int n_trials = 20000;
    const int n_ant = 8;
    const double c_stat = 2.5;
    double mean = 0.0;
    std::vector<double> u;
    u.reserve(n_trials);
    for (int t = 0; t < n_trials; ++t) {
        const double v = statistic_trial(c_stat, n_ant, rng);
        CHECK(v >= 0.0);
        mean += v;
        u.push_back(chi2_cdf_G(v / c_stat, n_ant));
    }
    mean /= n_trials;
    // E||y||^2 = N * c; 5 sigma band with Var = N c^2
    const double band = 5.0 * c_stat * std::sqrt(static_cast<double>(n_ant) / n_trials);
    CHECK(std::abs(mean - n_ant * c_stat) < band);
    CHECK(test::ks_uniform_scaled(std::move(u)) < 1.95);

    CHECK_THROWS_AS(statistic_trial(0.0, 4, rng), std::domain_error);
    CHECK_THROWS_AS(statistic_trial(1.0, 0, rng), std::domain_error);
}

TEST_CASE("channel trial matches the statistic law, phases are immaterial") {
    SystemConfig cfg;
    cfg.order = 2;
    cfg.n_antennas = 8;
    cfg.noise_var = 0.7;
    cfg.beta = {2.0, 0.5};
    cfg.power = {10.0, 10.0};
    const auto [u1, u2] = build_user_constellations(NestedDesign{1.5, 2.0, 0.0, 0.0}, cfg);
    const std::pair<int, int> symbols{1, 1};
    const double c_stat =
        sufficient_statistic(u1.raw_points[1], u2.raw_points[1], cfg);

    for (const auto& [p1, p2] :
         std::initializer_list<std::pair<double, double>>{{0.0, 0.0}, {0.7, 2.1}}) {
        Philox4x32 rng(31337, 0);
        std::vector<double> u;
        const int n_trials = 20000;
        u.reserve(n_trials);
        for (int t = 0; t < n_trials; ++t) {
            const double v = channel_trial(cfg, symbols, u1, u2, rng, p1, p2);
            u.push_back(chi2_cdf_G(v / c_stat, cfg.n_antennas));
        }
        CHECK(test::ks_uniform_scaled(std::move(u)) < 1.95);
    }
}

TEST_CASE("wilson interval behaves") {
    const auto [lo, hi] = wilson_interval(50, 100);
    CHECK(lo == doctest::Approx(0.40383).epsilon(1e-4));
    CHECK(hi == doctest::Approx(0.59617).epsilon(1e-4));

    const auto [lo0, hi0] = wilson_interval(0, 1000);
    CHECK(lo0 == 0.0);
    CHECK(hi0 > 0.0);
    CHECK(hi0 < 0.005);

    const auto [lo1, hi1] = wilson_interval(1000, 1000);
    CHECK(hi1 == 1.0);
    CHECK(lo1 < 1.0);

    for (std::uint64_t err : {0ULL, 3ULL, 500ULL, 997ULL, 1000ULL}) {
        const double p = static_cast<double>(err) / 1000.0;
        const auto [a, b] = wilson_interval(err, 1000);
        CHECK(a <= p);
        CHECK(b >= p);
        CHECK(a >= 0.0);
        CHECK(b <= 1.0);
    }
    CHECK_THROWS_AS(wilson_interval(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(2, 1), std::invalid_argument);
}

TEST_CASE("monte carlo is deterministic and worker-count independent") {
    const SystemConfig cfg = asym_config(8);
    const NestedDesign design = solve_p3(cfg).design;
    McConfig mc;
    mc.trials = 30000;
    mc.seed = 4242;
    mc.mode = McMode::StatisticLevel;

    mc.workers = 1;
    const McResult r1 = run_monte_carlo(cfg, design, mc);
    const McResult r1b = run_monte_carlo(cfg, design, mc);
    mc.workers = 4;
    const McResult r4 = run_monte_carlo(cfg, design, mc);
    mc.workers = 16;
    const McResult r16 = run_monte_carlo(cfg, design, mc);

    CHECK(r1.errors == r1b.errors);
    CHECK(r1.errors == r4.errors);
    CHECK(r1.errors == r16.errors);
    CHECK(r1.per_symbol_sent == r4.per_symbol_sent);
    CHECK(r1.per_symbol_sent == r16.per_symbol_sent);
    CHECK(r1.user_error_rates == r4.user_error_rates);
    CHECK(r1.sser_hat == r16.sser_hat);

    McConfig other = mc;
    other.seed = 777;
    CHECK(run_monte_carlo(cfg, design, other).errors != r1.errors);
}

TEST_CASE("monte carlo brackets the exact SSER (statistic mode)") {
    const SystemConfig cfg = asym_config(16);
    const NestedDesign design = solve_p3(cfg).design;
    const double exact = exact_sser(sum_constellation(design, cfg), 16).sser;
    McConfig mc;
    mc.trials = 200000;
    mc.seed = 7;
    const McResult r = run_monte_carlo(cfg, design, mc);
    const double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(mc.trials));
    CHECK(std::abs(r.sser_hat - exact) < 4.0 * sigma);
    CHECK(r.ci95.first <= r.sser_hat);
    CHECK(r.ci95.second >= r.sser_hat);
    CHECK(r.trials == mc.trials);
    CHECK(r.errors == static_cast<std::uint64_t>(
                          std::llround(r.sser_hat * static_cast<double>(mc.trials))));
}

TEST_CASE("monte carlo brackets the exact SSER (channel mode)") {
    SystemConfig cfg = asym_config(8);
    cfg.beta = {1.7, 0.4};  // exercise unequal gains end to end
    const NestedDesign design = solve_p3(cfg).design;
    const double exact = exact_sser(sum_constellation(design, cfg), 8).sser;
    McConfig mc;
    mc.trials = 30000;
    mc.seed = 21;
    mc.mode = McMode::ChannelLevel;
    mc.workers = 2;
    const McResult r = run_monte_carlo(cfg, design, mc);
    const double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(mc.trials));
    CHECK(std::abs(r.sser_hat - exact) < 4.0 * sigma);
}

TEST_CASE("per-symbol success frequencies track the closed form") {
    const SystemConfig cfg = asym_config(8);
    const NestedDesign design = solve_p3(cfg).design;
    const SumConstellation sum = sum_constellation(design, cfg);
    const auto probs = success_probs(sum, 8);
    McConfig mc;
    mc.trials = 200000;
    mc.seed = 11;
    const McResult r = run_monte_carlo(cfg, design, mc);
    REQUIRE(r.per_symbol_success.size() == probs.size());
    std::uint64_t sent_total = 0;
    for (size_t l = 0; l < probs.size(); ++l) {
        sent_total += r.per_symbol_sent[l];
        const double n_l = static_cast<double>(r.per_symbol_sent[l]);
        REQUIRE(n_l > 0);
        const double sigma = std::sqrt(std::max(probs[l] * (1.0 - probs[l]), 1e-6) / n_l);
        CHECK(std::abs(r.per_symbol_success[l] - probs[l]) < 4.5 * sigma);
    }
    CHECK(sent_total == mc.trials);

    // with a single trial, three of the four statistics are never sent
    McConfig tiny;
    tiny.trials = 1;
    tiny.seed = 3;
    const McResult rt = run_monte_carlo(cfg, design, tiny);
    int nan_count = 0;
    for (double v : rt.per_symbol_success) {
        if (std::isnan(v)) ++nan_count;
    }
    CHECK(nan_count == 3);
}

TEST_CASE("per-user error rates are consistent with the symbol error rate") {
    const SystemConfig cfg = asym_config(4);
    const NestedDesign design = solve_p3(cfg).design;
    McConfig mc;
    mc.trials = 50000;
    mc.seed = 13;
    const McResult r = run_monte_carlo(cfg, design, mc);
    CHECK(r.user_error_rates[0] <= r.sser_hat);
    CHECK(r.user_error_rates[1] <= r.sser_hat);
    CHECK(r.user_error_rates[0] + r.user_error_rates[1] >= r.sser_hat);
}

TEST_CASE("monte carlo input validation") {
    const SystemConfig cfg = asym_config(8);
    const NestedDesign design = solve_p3(cfg).design;
    McConfig mc;
    mc.trials = 0;
    CHECK_THROWS_AS(run_monte_carlo(cfg, design, mc), std::invalid_argument);
    mc.trials = 10;
    mc.workers = 0;
    CHECK_THROWS_AS(run_monte_carlo(cfg, design, mc), std::invalid_argument);
    mc.workers = 1;
    CHECK_THROWS_AS(run_monte_carlo(cfg, NestedDesign{100.0, 100.0, 0.0, 0.0}, mc),
                    InfeasibleError);
}
