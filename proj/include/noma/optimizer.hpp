#ifndef NOMA_OPTIMIZER_HPP
#define NOMA_OPTIMIZER_HPP

#include <utility>

#include "noma/constellation.hpp"

namespace noma {

// Which average-power constraint is tight at the optimum: the max-min ratio
// design always exhausts at least one budget.
enum class CaseTag {
    Case1_Constraint2Tight,  // user 2's budget binds; delta1 stays below its cap
    Case2_Constraint1Tight,  // user 1's budget binds at delta1 = 2*b1/(M-1)
};

struct DesignSolution {
    NestedDesign design;
    double objective = 0.0;  // achieved min adjacent ratio
    CaseTag case_tag = CaseTag::Case1_Constraint2Tight;
    double ratio_delta1_gap = 0.0;  // ratio across the widest-energy delta1 gap
    double ratio_delta2_gap = 0.0;  // ratio across the widest-energy delta2 gap
};

// Both offsets at zero: only two of the M^2 - 1 adjacent ratios can be
// minimal, one per gap width. Returns {ratio over the binding delta1 gap,
// ratio over the binding delta2 gap}; their min is the design objective.
std::pair<double, double> p3_group_ratios(const NestedDesign& design,
                                          double noise_var, int order);

// Positive root of
//   u^2 + u*(dt2 + s2 + s2/(M-1)) = dt2*(dt2 + s2)/(M-1)
// in the aggregate-spread variables u = (M-1)*delta1. With the second budget
// tight (dt2 = 2*b2), this is the user-1 spread that balances both group
// ratios. Increasing in dt2; delta1_dagger(0, ., .) = 0. Requires M >= 2.
double delta1_dagger(double delta2_tilde, double noise_var, int order);

// Closed-form max-min ratio design with offsets at zero, for order >= 2.
// Case A (Constraint2Tight): the balanced split is feasible for user 1, both
// group ratios coincide. Case B (Constraint1Tight): delta1 is capped by
// user 1's budget and delta2 solves the residual quadratic. The quadratic is
// evaluated twice, by independent algebraic routes, and must agree to 1e-9.
DesignSolution solve_p3(const SystemConfig& cfg);

// Exhaustive reference: scans an equispaced (resolution+1)^2 grid over
// [0, 2*b1/(M-1)] x [0, 2*b2/(M-1)], keeps feasible points, and evaluates
// the full min adjacent ratio by enumeration (no two-ratio shortcut).
// Ties resolve to the lexicographically smallest (delta1, delta2).
// resolution >= 100 required.
DesignSolution grid_search_p3(const SystemConfig& cfg, int resolution);

// Equal-gap baseline: delta1 = delta2 = min over both users of the widest
// equal spacing their budget allows, offsets zero.
DesignSolution med_design(const SystemConfig& cfg);

}  // namespace noma

#endif
