#include "noma/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "noma/detector.hpp"

namespace noma {

double channel_trial(const SystemConfig& cfg, std::pair<int, int> symbols,
                     const UserConstellation& c1, const UserConstellation& c2,
                     Philox4x32& rng, double phase1, double phase2) {
    const double s1 = c1.raw_points.at(symbols.first);
    const double s2 = c2.raw_points.at(symbols.second);
    const double a1 = std::sqrt(s1);
    const double a2 = std::sqrt(s2);
    // Transmit symbols x_k = sqrt(s_k) * exp(i*phase_k).
    const double x1r = a1 * std::cos(phase1), x1i = a1 * std::sin(phase1);
    const double x2r = a2 * std::cos(phase2), x2i = a2 * std::sin(phase2);
    const double hs1 = std::sqrt(0.5 * cfg.beta[0]);
    const double hs2 = std::sqrt(0.5 * cfg.beta[1]);
    const double ns = std::sqrt(0.5 * cfg.noise_var);

    double acc = 0.0;
    for (int n = 0; n < cfg.n_antennas; ++n) {
        const auto [g1r, g1i] = rng.next_normal_pair();
        const auto [g2r, g2i] = rng.next_normal_pair();
        const auto [wr, wi] = rng.next_normal_pair();
        const double h1r = hs1 * g1r, h1i = hs1 * g1i;
        const double h2r = hs2 * g2r, h2i = hs2 * g2i;
        const double yr = h1r * x1r - h1i * x1i + h2r * x2r - h2i * x2i + ns * wr;
        const double yi = h1r * x1i + h1i * x1r + h2r * x2i + h2i * x2r + ns * wi;
        acc += yr * yr + yi * yi;
    }
    return acc;
}

double statistic_trial(double c_stat, int n_antennas, Philox4x32& rng) {
    if (!(c_stat > 0.0)) {
        throw std::domain_error("statistic_trial: statistic must be > 0");
    }
    if (n_antennas < 1) {
        throw std::domain_error("statistic_trial: n_antennas must be >= 1");
    }
    // ||y||^2 / c is a sum of N unit-mean exponentials; accumulate them as
    // -log of a running product of uniforms, rescaling before underflow.
    double acc = 0.0;
    double prod = 1.0;
    for (int k = 0; k < n_antennas; ++k) {
        prod *= 1.0 - rng.next_double();
        if (prod < 1e-280) {
            acc -= std::log(prod);
            prod = 1.0;
        }
    }
    return c_stat * (acc - std::log(prod));
}

std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t trials) {
    if (trials == 0) {
        throw std::invalid_argument("wilson_interval: trials must be > 0");
    }
    if (errors > trials) {
        throw std::invalid_argument("wilson_interval: errors exceed trials");
    }
    constexpr double z = 1.959963984540054;  // 97.5% standard normal quantile
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // rounding can push an endpoint a few ulp past the point estimate at the
    // extremes; the interval must always contain it
    return {std::max(0.0, std::min(center - half, p)),
            std::min(1.0, std::max(center + half, p))};
}

namespace {

struct BlockTally {
    std::uint64_t errors = 0;
    std::uint64_t user_err[2] = {0, 0};
    std::vector<std::uint64_t> sent;
    std::vector<std::uint64_t> correct;
};

}  // namespace

McResult run_monte_carlo(const SystemConfig& cfg, const NestedDesign& design,
                         const McConfig& mc) {
    cfg.validate();
    design.validate();
    if (mc.trials < 1) {
        throw std::invalid_argument("run_monte_carlo: trials must be >= 1");
    }
    if (mc.workers < 1) {
        throw std::invalid_argument("run_monte_carlo: workers must be >= 1");
    }
    const auto report = check_power_constraints(design, cfg);
    const double budget_tol =
        1e-9 * std::max(1.0, std::max(cfg.budget(0), cfg.budget(1)));
    if (!report.feasible(budget_tol)) {
        throw InfeasibleError("run_monte_carlo: design violates a power budget");
    }

    const auto [u1, u2] = build_user_constellations(design, cfg);
    const SumConstellation sum = compose_sum(u1, u2, cfg);
    const DecisionThresholds th = compute_thresholds(sum);
    const int m = cfg.order;
    const int m2 = sum.size();
    const double inv_n = 1.0 / static_cast<double>(cfg.n_antennas);

    const std::uint64_t n_blocks = (mc.trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
    std::vector<BlockTally> tallies(n_blocks);

    auto run_block = [&](std::uint64_t b) {
        BlockTally tally;
        tally.sent.assign(m2, 0);
        tally.correct.assign(m2, 0);
        const std::uint64_t begin = b * kTrialsPerBlock;
        const std::uint64_t count = std::min<std::uint64_t>(kTrialsPerBlock, mc.trials - begin);
        Philox4x32 rng(mc.seed, b);
        for (std::uint64_t t = 0; t < count; ++t) {
            int i = static_cast<int>(rng.next_double() * m);
            int j = static_cast<int>(rng.next_double() * m);
            i = std::min(i, m - 1);
            j = std::min(j, m - 1);
            const int l = sum.index_of(i, j);
            double power;
            if (mc.mode == McMode::StatisticLevel) {
                power = statistic_trial(sum.stats[l], cfg.n_antennas, rng);
            } else {
                power = channel_trial(cfg, {i, j}, u1, u2, rng);
            }
            const Detection det = detect(power * inv_n, th, sum);
            ++tally.sent[l];
            if (det.index == l + 1) {
                ++tally.correct[l];
            } else {
                ++tally.errors;
            }
            if (det.symbols.first != i) ++tally.user_err[0];
            if (det.symbols.second != j) ++tally.user_err[1];
        }
        tallies[b] = std::move(tally);
    };

    const int workers = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(mc.workers), n_blocks));
    if (workers <= 1) {
        for (std::uint64_t b = 0; b < n_blocks; ++b) run_block(b);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t b = next.fetch_add(1); b < n_blocks;
                     b = next.fetch_add(1)) {
                    run_block(b);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    McResult result;
    result.trials = mc.trials;
    std::vector<std::uint64_t> sent(m2, 0), correct(m2, 0);
    std::uint64_t user_err[2] = {0, 0};
    for (const auto& tally : tallies) {  // merged in block order
        result.errors += tally.errors;
        user_err[0] += tally.user_err[0];
        user_err[1] += tally.user_err[1];
        for (int l = 0; l < m2; ++l) {
            sent[l] += tally.sent[l];
            correct[l] += tally.correct[l];
        }
    }
    result.sser_hat = static_cast<double>(result.errors) / static_cast<double>(mc.trials);
    result.ci95 = wilson_interval(result.errors, mc.trials);
    result.per_symbol_sent = sent;
    result.per_symbol_success.resize(m2);
    for (int l = 0; l < m2; ++l) {
        result.per_symbol_success[l] =
            sent[l] ? static_cast<double>(correct[l]) / static_cast<double>(sent[l])
                    : std::numeric_limits<double>::quiet_NaN();
    }
    for (int k = 0; k < 2; ++k) {
        result.user_error_rates[k] =
            static_cast<double>(user_err[k]) / static_cast<double>(mc.trials);
    }
    return result;
}

}  // namespace noma
