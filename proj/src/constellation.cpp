#include "noma/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace noma {

namespace {

bool finite_pos(double v) { return std::isfinite(v) && v > 0.0; }

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void SystemConfig::validate() const {
    if (n_antennas < 1) {
        throw std::invalid_argument("SystemConfig: n_antennas must be >= 1");
    }
    if (!finite_pos(noise_var)) {
        throw std::invalid_argument("SystemConfig: noise_var must be finite and > 0");
    }
    for (int k = 0; k < 2; ++k) {
        if (!finite_pos(beta[k])) {
            throw std::invalid_argument("SystemConfig: channel gains must be finite and > 0");
        }
        if (!finite_pos(power[k])) {
            throw std::invalid_argument("SystemConfig: power budgets must be finite and > 0");
        }
        if (!std::isfinite(budget(k))) {
            throw std::invalid_argument("SystemConfig: budget beta_k * P_k overflows");
        }
    }
    if (order < 1) {
        throw std::invalid_argument("SystemConfig: order must be >= 1");
    }
}

std::pair<SystemConfig, bool> normalize_user_order(const SystemConfig& cfg) {
    cfg.validate();
    if (cfg.budget(0) <= cfg.budget(1)) {
        return {cfg, false};
    }
    SystemConfig swapped = cfg;
    std::swap(swapped.beta[0], swapped.beta[1]);
    std::swap(swapped.power[0], swapped.power[1]);
    return {swapped, true};
}

void require_user_order(const SystemConfig& cfg) {
    if (cfg.budget(0) > cfg.budget(1)) {
        std::ostringstream msg;
        msg << "user order violated: beta1*P1 = " << cfg.budget(0)
            << " exceeds beta2*P2 = " << cfg.budget(1);
        throw OrderingError(msg.str());
    }
}

double NestedDesign::spacing(int k, int order) const {
    if (k == 0) return delta1;
    if (k == 1) return static_cast<double>(order - 1) * delta1 + delta2;
    throw std::invalid_argument("NestedDesign::spacing: user index must be 0 or 1");
}

void NestedDesign::validate() const {
    for (double v : {delta1, delta2, offset1, offset2}) {
        if (!finite_nonneg(v)) {
            throw std::invalid_argument("NestedDesign: entries must be finite and >= 0");
        }
    }
}

double sufficient_statistic(double s1, double s2, const SystemConfig& cfg) {
    cfg.validate();
    if (!finite_nonneg(s1) || !finite_nonneg(s2)) {
        throw std::invalid_argument("sufficient_statistic: energies must be finite and >= 0");
    }
    return cfg.beta[0] * s1 + cfg.beta[1] * s2 + cfg.noise_var;
}

std::pair<UserConstellation, UserConstellation>
build_user_constellations(const NestedDesign& design, const SystemConfig& cfg) {
    cfg.validate();
    design.validate();
    UserConstellation u1, u2;
    u1.points.reserve(cfg.order);
    u2.points.reserve(cfg.order);
    for (int k = 0; k < 2; ++k) {
        UserConstellation& u = (k == 0) ? u1 : u2;
        const double step = design.spacing(k, cfg.order);
        const double offset = (k == 0) ? design.offset1 : design.offset2;
        for (int m = 0; m < cfg.order; ++m) {
            const double a = static_cast<double>(m) * step + offset;
            u.points.push_back(a);
            u.raw_points.push_back(a / cfg.beta[k]);
        }
    }
    return {std::move(u1), std::move(u2)};
}

SumConstellation compose_sum(const UserConstellation& c1,
                             const UserConstellation& c2,
                             const SystemConfig& cfg) {
    cfg.validate();
    if (c1.order() != c2.order() || c1.order() != cfg.order) {
        throw std::invalid_argument("compose_sum: constellation orders must match config");
    }
    const int m = cfg.order;
    SumConstellation sum;
    sum.order = m;
    sum.stats.reserve(static_cast<size_t>(m) * m);
    sum.symbol_map.reserve(static_cast<size_t>(m) * m);

    struct Entry {
        double value;
        int i, j;
    };
    std::vector<Entry> entries;
    entries.reserve(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            entries.push_back({(c1.points[i] + c2.points[j]) + cfg.noise_var, i, j});
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    const double tol = kCollisionRelTol * std::max(1.0, entries.back().value);
    for (size_t l = 1; l < entries.size(); ++l) {
        if (entries[l].value - entries[l - 1].value < tol) {
            std::ostringstream msg;
            msg << "compose_sum: statistics for pairs (" << entries[l - 1].i << ","
                << entries[l - 1].j << ") and (" << entries[l].i << "," << entries[l].j
                << ") collide at " << entries[l].value;
            throw CollisionError(msg.str());
        }
    }

    sum.pair_index.assign(static_cast<size_t>(m) * m, -1);
    for (size_t l = 0; l < entries.size(); ++l) {
        sum.stats.push_back(entries[l].value);
        sum.symbol_map.emplace_back(entries[l].i, entries[l].j);
        sum.pair_index[static_cast<size_t>(entries[l].i) * m + entries[l].j] =
            static_cast<int>(l);
    }
    return sum;
}

SumConstellation sum_constellation(const NestedDesign& design, const SystemConfig& cfg) {
    auto [u1, u2] = build_user_constellations(design, cfg);
    return compose_sum(u1, u2, cfg);
}

ConstraintReport check_power_constraints(const NestedDesign& design,
                                         const SystemConfig& cfg) {
    cfg.validate();
    design.validate();
    const double half = 0.5 * static_cast<double>(cfg.order - 1);
    const double mean1 = design.offset1 + half * design.spacing(0, cfg.order);
    const double mean2 = design.offset1 + design.offset2 + half * design.spacing(1, cfg.order);
    return {cfg.budget(0) - mean1, cfg.budget(1) - mean2};
}

}  // namespace noma
