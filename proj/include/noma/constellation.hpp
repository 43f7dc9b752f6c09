#ifndef NOMA_CONSTELLATION_HPP
#define NOMA_CONSTELLATION_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace noma {

// Two sum statistics that should be distinct are treated as colliding when
// they differ by less than kCollisionRelTol * max(1, largest statistic).
inline constexpr double kCollisionRelTol = 1e-9;

class CollisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OrderingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Physical layout of the two-user uplink: antenna count, noise power, the
// large-scale channel gains beta_k, average transmit power budgets P_k
// (watts) and the per-user constellation order M.
struct SystemConfig {
    int n_antennas = 1;
    double noise_var = 1.0;
    std::array<double, 2> beta{1.0, 1.0};
    std::array<double, 2> power{1.0, 1.0};
    int order = 2;

    // Effective receive-side budget beta_k * P_k for user k (0-based).
    double budget(int k) const { return beta.at(k) * power.at(k); }

    // Throws std::invalid_argument on non-finite or non-positive entries.
    void validate() const;
};

// Returns a copy of cfg with the users ordered so budget(0) <= budget(1),
// plus a flag telling whether they were swapped.
std::pair<SystemConfig, bool> normalize_user_order(const SystemConfig& cfg);

// Throws OrderingError unless budget(0) <= budget(1).
void require_user_order(const SystemConfig& cfg);

// Decision variables of the nested constellation family. User 1 transmits on
// an equally spaced grid with step delta1; user 2 on a grid with step
// (M-1)*delta1 + delta2, so every pairwise sum is distinct whenever
// delta2 > 0. offset1/offset2 are the smallest points of each (beta-scaled)
// constellation.
struct NestedDesign {
    double delta1 = 0.0;
    double delta2 = 0.0;
    double offset1 = 0.0;
    double offset2 = 0.0;

    // Grid step of user k (0-based) for a given constellation order.
    double spacing(int k, int order) const;

    // Throws std::invalid_argument on negative or non-finite entries.
    void validate() const;
};

// One user's energy constellation. `points` holds the beta-scaled receive
// energies a_{k,i} = beta_k * s_{k,i}; `raw_points` the transmit energies
// s_{k,i}. Average-power feasibility is not enforced here; it is checked by
// check_power_constraints and by the simulator entry point.
struct UserConstellation {
    std::vector<double> points;
    std::vector<double> raw_points;

    int order() const { return static_cast<int>(points.size()); }
};

// The composite receive constellation: all M^2 sums a_{1,i} + a_{2,j} plus
// the noise power, sorted ascending. symbol_map[l] is the (i, j) pair that
// produced stats[l]; pair_index inverts the map.
struct SumConstellation {
    std::vector<double> stats;
    std::vector<std::pair<int, int>> symbol_map;
    std::vector<int> pair_index;
    int order = 0;

    int size() const { return static_cast<int>(stats.size()); }
    int index_of(int i, int j) const { return pair_index.at(static_cast<size_t>(i) * order + j); }
};

// Expected value of ||y||^2 / N given transmit energies (s1, s2):
// beta1*s1 + beta2*s2 + sigma^2.
double sufficient_statistic(double s1, double s2, const SystemConfig& cfg);

// Builds both user constellations from a design. Rejects non-finite inputs.
std::pair<UserConstellation, UserConstellation>
build_user_constellations(const NestedDesign& design, const SystemConfig& cfg);

// Composes the sorted sum constellation. Throws CollisionError if two sums
// coincide within tolerance (the pair is then not uniquely decodable).
SumConstellation compose_sum(const UserConstellation& c1,
                             const UserConstellation& c2,
                             const SystemConfig& cfg);

// Convenience: design -> sum constellation.
SumConstellation sum_constellation(const NestedDesign& design, const SystemConfig& cfg);

// Average-power slack of each user: slack_k = beta_k*P_k - mean_i a_{k,i}.
// Both users use all points equiprobably, so the mean is the midpoint of the
// scaled grid. Negative slack means the budget is violated.
struct ConstraintReport {
    double slack1 = 0.0;
    double slack2 = 0.0;

    bool feasible(double tol = 0.0) const { return slack1 >= -tol && slack2 >= -tol; }
};

ConstraintReport check_power_constraints(const NestedDesign& design, const SystemConfig& cfg);

}  // namespace noma

#endif
