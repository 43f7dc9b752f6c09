"""Energy-constellation design and SSER analysis for a two-user noncoherent
massive-antenna uplink.

The heavy lifting lives in the compiled extension ``nomasim._core``; this
package re-exports its public surface.
"""

from ._core import (  # noqa: F401
    CaseTag,
    CollisionError,
    ConfigError,
    ConstraintReport,
    DecisionThresholds,
    DesignSolution,
    Detection,
    InfeasibleError,
    McConfig,
    McMode,
    McResult,
    MinRatioReport,
    NestedDesign,
    OrderingError,
    Philox4x32,
    SserReport,
    SumConstellation,
    SystemConfig,
    UserConstellation,
    __version__,
    build_user_constellations,
    channel_trial,
    check_power_constraints,
    chi2_cdf_G,
    compose_sum,
    compute_thresholds,
    dbm_to_watts,
    delta1_dagger,
    detect,
    detect_bruteforce,
    exact_sser,
    grid_search_p3,
    med_design,
    min_ratio,
    mu,
    normalize_user_order,
    p3_group_ratios,
    pairwise_error_F,
    require_user_order,
    run_monte_carlo,
    solve_p3,
    statistic_trial,
    success_probs,
    sufficient_statistic,
    sum_constellation,
    watts_to_dbm,
    wilson_interval,
)
