#ifndef NOMA_SIMULATOR_HPP
#define NOMA_SIMULATOR_HPP

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "noma/constellation.hpp"
#include "noma/rng.hpp"

namespace noma {

// Trials are processed in fixed blocks; block b draws from the counter
// stream (seed, b). Per-block tallies are integers merged in block order, so
// the result is bit-identical for any worker count.
inline constexpr std::uint64_t kTrialsPerBlock = 8192;

enum class McMode {
    ChannelLevel,    // draw fading + noise vectors, form ||y||^2 explicitly
    StatisticLevel,  // draw ||y||^2 directly from its conditional law
};

struct McConfig {
    std::uint64_t trials = 1;
    std::uint64_t seed = 1;
    McMode mode = McMode::StatisticLevel;
    int workers = 1;
};

struct McResult {
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double sser_hat = 0.0;
    std::pair<double, double> ci95{0.0, 0.0};
    // Per sum statistic l: empirical success frequency, NaN if never sent.
    std::vector<double> per_symbol_success;
    std::vector<std::uint64_t> per_symbol_sent;
    // Fraction of trials in which each user's point was decoded wrongly.
    std::array<double, 2> user_error_rates{0.0, 0.0};
};

// One fading-level trial: i.i.d. circularly symmetric complex Gaussian
// channel vectors (per-component variance beta_k / 2), unit-variance-split
// complex noise, deterministic transmit phases. Returns ||y||^2.
double channel_trial(const SystemConfig& cfg, std::pair<int, int> symbols,
                     const UserConstellation& c1, const UserConstellation& c2,
                     Philox4x32& rng, double phase1 = 0.0, double phase2 = 0.0);

// One statistic-level trial: ||y||^2 = c_stat * (sum of N unit-mean
// exponentials). Requires c_stat > 0.
double statistic_trial(double c_stat, int n_antennas, Philox4x32& rng);

// 95% Wilson score interval for errors/trials; always brackets the point
// estimate and stays inside [0, 1].
std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t trials);

// Full Monte Carlo run of the threshold detector over a nested design.
// Throws InfeasibleError if the design violates either power budget.
McResult run_monte_carlo(const SystemConfig& cfg, const NestedDesign& design,
                         const McConfig& mc);

}  // namespace noma

#endif
