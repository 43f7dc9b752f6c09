#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "noma/analysis.hpp"
#include "noma/constellation.hpp"
#include "noma/detector.hpp"
#include "noma/experiment.hpp"
#include "noma/optimizer.hpp"
#include "noma/rng.hpp"
#include "noma/simulator.hpp"

namespace py = pybind11;

using namespace noma;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Energy-constellation design and SSER analysis for a two-user "
              "noncoherent massive-antenna uplink";
    m.attr("__version__") = kToolVersion;

    py::register_exception<CollisionError>(m, "CollisionError");
    py::register_exception<OrderingError>(m, "OrderingError");
    py::register_exception<InfeasibleError>(m, "InfeasibleError");
    py::register_exception<ConfigError>(m, "ConfigError");

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init([](int n, double sigma2, double beta1, double beta2, double p1,
                         double p2, int order) {
                 SystemConfig cfg;
                 cfg.n_antennas = n;
                 cfg.noise_var = sigma2;
                 cfg.beta = {beta1, beta2};
                 cfg.power = {p1, p2};
                 cfg.order = order;
                 cfg.validate();
                 return cfg;
             }),
             py::arg("n_antennas") = 1, py::arg("noise_var") = 1.0,
             py::arg("beta1") = 1.0, py::arg("beta2") = 1.0, py::arg("p1") = 1.0,
             py::arg("p2") = 1.0, py::arg("order") = 2)
        .def_readwrite("n_antennas", &SystemConfig::n_antennas)
        .def_readwrite("noise_var", &SystemConfig::noise_var)
        .def_readwrite("beta", &SystemConfig::beta)
        .def_readwrite("power", &SystemConfig::power)
        .def_readwrite("order", &SystemConfig::order)
        .def("budget", &SystemConfig::budget, py::arg("k"))
        .def("validate", &SystemConfig::validate)
        .def("__repr__", [](const SystemConfig& c) {
            std::ostringstream s;
            s << "SystemConfig(n_antennas=" << c.n_antennas << ", noise_var=" << c.noise_var
              << ", beta=(" << c.beta[0] << ", " << c.beta[1] << "), power=(" << c.power[0]
              << ", " << c.power[1] << "), order=" << c.order << ")";
            return s.str();
        });

    py::class_<NestedDesign>(m, "NestedDesign")
        .def(py::init([](double d1, double d2, double q1, double q2) {
                 NestedDesign d{d1, d2, q1, q2};
                 d.validate();
                 return d;
             }),
             py::arg("delta1") = 0.0, py::arg("delta2") = 0.0, py::arg("offset1") = 0.0,
             py::arg("offset2") = 0.0)
        .def_readwrite("delta1", &NestedDesign::delta1)
        .def_readwrite("delta2", &NestedDesign::delta2)
        .def_readwrite("offset1", &NestedDesign::offset1)
        .def_readwrite("offset2", &NestedDesign::offset2)
        .def("spacing", &NestedDesign::spacing, py::arg("k"), py::arg("order"))
        .def("__repr__", [](const NestedDesign& d) {
            std::ostringstream s;
            s << "NestedDesign(delta1=" << d.delta1 << ", delta2=" << d.delta2
              << ", offset1=" << d.offset1 << ", offset2=" << d.offset2 << ")";
            return s.str();
        });

    py::class_<UserConstellation>(m, "UserConstellation")
        .def_readonly("points", &UserConstellation::points)
        .def_readonly("raw_points", &UserConstellation::raw_points)
        .def_property_readonly("order", &UserConstellation::order);

    py::class_<SumConstellation>(m, "SumConstellation")
        .def_readonly("stats", &SumConstellation::stats)
        .def_readonly("symbol_map", &SumConstellation::symbol_map)
        .def_readonly("order", &SumConstellation::order)
        .def("index_of", &SumConstellation::index_of, py::arg("i"), py::arg("j"))
        .def("__len__", &SumConstellation::size);

    py::class_<ConstraintReport>(m, "ConstraintReport")
        .def_readonly("slack1", &ConstraintReport::slack1)
        .def_readonly("slack2", &ConstraintReport::slack2)
        .def("feasible", &ConstraintReport::feasible, py::arg("tol") = 0.0);

    py::class_<DecisionThresholds>(m, "DecisionThresholds")
        .def_readonly("bounds", &DecisionThresholds::bounds);

    py::class_<Detection>(m, "Detection")
        .def_readonly("index", &Detection::index)
        .def_readonly("symbols", &Detection::symbols);

    py::class_<MinRatioReport>(m, "MinRatioReport")
        .def_readonly("ratio", &MinRatioReport::ratio)
        .def_readonly("ell", &MinRatioReport::ell)
        .def_readonly("gap", &MinRatioReport::gap);

    py::class_<SserReport>(m, "SserReport")
        .def_readonly("sser", &SserReport::sser)
        .def_readonly("success_probs", &SserReport::success_probs)
        .def_readonly("min_ratio", &SserReport::min_ratio);

    py::enum_<CaseTag>(m, "CaseTag")
        .value("Case1_Constraint2Tight", CaseTag::Case1_Constraint2Tight)
        .value("Case2_Constraint1Tight", CaseTag::Case2_Constraint1Tight);

    py::class_<DesignSolution>(m, "DesignSolution")
        .def_readonly("design", &DesignSolution::design)
        .def_readonly("objective", &DesignSolution::objective)
        .def_readonly("case_tag", &DesignSolution::case_tag)
        .def_readonly("ratio_delta1_gap", &DesignSolution::ratio_delta1_gap)
        .def_readonly("ratio_delta2_gap", &DesignSolution::ratio_delta2_gap);

    py::enum_<McMode>(m, "McMode")
        .value("ChannelLevel", McMode::ChannelLevel)
        .value("StatisticLevel", McMode::StatisticLevel);

    py::class_<McConfig>(m, "McConfig")
        .def(py::init([](std::uint64_t trials, std::uint64_t seed, McMode mode, int workers) {
                 return McConfig{trials, seed, mode, workers};
             }),
             py::arg("trials") = 1, py::arg("seed") = 1,
             py::arg("mode") = McMode::StatisticLevel, py::arg("workers") = 1)
        .def_readwrite("trials", &McConfig::trials)
        .def_readwrite("seed", &McConfig::seed)
        .def_readwrite("mode", &McConfig::mode)
        .def_readwrite("workers", &McConfig::workers);

    py::class_<McResult>(m, "McResult")
        .def_readonly("trials", &McResult::trials)
        .def_readonly("errors", &McResult::errors)
        .def_readonly("sser_hat", &McResult::sser_hat)
        .def_readonly("ci95", &McResult::ci95)
        .def_readonly("per_symbol_success", &McResult::per_symbol_success)
        .def_readonly("per_symbol_sent", &McResult::per_symbol_sent)
        .def_readonly("user_error_rates", &McResult::user_error_rates);

    py::class_<Philox4x32>(m, "Philox4x32")
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"), py::arg("stream") = 0)
        .def("next_u64", &Philox4x32::next_u64)
        .def("next_double", &Philox4x32::next_double)
        .def("next_exponential", &Philox4x32::next_exponential);

    m.def("normalize_user_order", &normalize_user_order, py::arg("config"));
    m.def("require_user_order", &require_user_order, py::arg("config"));
    m.def("sufficient_statistic", &sufficient_statistic, py::arg("s1"), py::arg("s2"),
          py::arg("config"));
    m.def("build_user_constellations", &build_user_constellations, py::arg("design"),
          py::arg("config"));
    m.def("compose_sum", &compose_sum, py::arg("c1"), py::arg("c2"), py::arg("config"));
    m.def("sum_constellation", &sum_constellation, py::arg("design"), py::arg("config"));
    m.def("check_power_constraints", &check_power_constraints, py::arg("design"),
          py::arg("config"));
    m.def("mu", &mu, py::arg("x"));
    m.def("compute_thresholds", &compute_thresholds, py::arg("sum"));
    m.def("detect", &detect, py::arg("avg_power"), py::arg("thresholds"), py::arg("sum"));
    m.def("detect_bruteforce", &detect_bruteforce, py::arg("y_norm_sq"),
          py::arg("n_antennas"), py::arg("sum"));
    m.def("chi2_cdf_G", &chi2_cdf_G, py::arg("x"), py::arg("n_antennas"));
    m.def("pairwise_error_F", &pairwise_error_F, py::arg("t"), py::arg("n_antennas"));
    m.def("min_ratio", &min_ratio, py::arg("sum"));
    m.def("success_probs", &success_probs, py::arg("sum"), py::arg("n_antennas"));
    m.def("exact_sser", &exact_sser, py::arg("sum"), py::arg("n_antennas"));
    m.def("delta1_dagger", &delta1_dagger, py::arg("delta2_tilde"), py::arg("noise_var"),
          py::arg("order"));
    m.def("p3_group_ratios", &p3_group_ratios, py::arg("design"), py::arg("noise_var"),
          py::arg("order"));
    m.def("solve_p3", &solve_p3, py::arg("config"));
    m.def("grid_search_p3", &grid_search_p3, py::arg("config"), py::arg("resolution"));
    m.def("med_design", &med_design, py::arg("config"));
    m.def("statistic_trial", &statistic_trial, py::arg("c_stat"), py::arg("n_antennas"),
          py::arg("rng"));
    m.def("channel_trial", &channel_trial, py::arg("config"), py::arg("symbols"),
          py::arg("c1"), py::arg("c2"), py::arg("rng"), py::arg("phase1") = 0.0,
          py::arg("phase2") = 0.0);
    m.def(
        "run_monte_carlo",
        [](const SystemConfig& cfg, const NestedDesign& design, const McConfig& mc) {
            py::gil_scoped_release release;
            return run_monte_carlo(cfg, design, mc);
        },
        py::arg("config"), py::arg("design"), py::arg("mc"));
    m.def("wilson_interval", &wilson_interval, py::arg("errors"), py::arg("trials"));
    m.def("dbm_to_watts", &dbm_to_watts, py::arg("dbm"));
    m.def("watts_to_dbm", &watts_to_dbm, py::arg("watts"));
}
