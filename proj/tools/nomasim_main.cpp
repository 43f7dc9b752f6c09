#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "noma/experiment.hpp"

namespace {

// Exit codes: 0 ok, 2 config/usage, 3 infeasible or degenerate design,
// 4 validation checks failed, 5 output I/O.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitValidation = 4;
constexpr int kExitIo = 5;

struct CliOverrides {
    std::string config_path;
    std::string output_path;
    bool demo = false;
    std::int64_t trials = -1;
    std::int64_t seed = -1;
    std::int64_t workers = -1;
    std::string mode;
    std::string designs;
};

noma::ExperimentSpec make_spec(const CliOverrides& cli) {
    noma::ExperimentSpec spec;
    if (!cli.config_path.empty()) {
        spec = noma::parse_config_file(cli.config_path);
    } else if (cli.demo) {
        spec = noma::default_demo_spec();
    } else {
        throw noma::ConfigError("no config given: pass --config FILE or --demo");
    }
    if (cli.trials >= 0) {
        if (cli.trials == 0) throw noma::ConfigError("--trials must be >= 1");
        spec.mc.trials = static_cast<std::uint64_t>(cli.trials);
        spec.mc_enabled = true;
    }
    if (cli.seed >= 0) spec.mc.seed = static_cast<std::uint64_t>(cli.seed);
    if (cli.workers >= 0) {
        if (cli.workers == 0) throw noma::ConfigError("--workers must be >= 1");
        spec.mc.workers = static_cast<int>(cli.workers);
    }
    if (!cli.mode.empty()) {
        if (cli.mode == "statistic") {
            spec.mc.mode = noma::McMode::StatisticLevel;
        } else if (cli.mode == "channel") {
            spec.mc.mode = noma::McMode::ChannelLevel;
        } else {
            throw noma::ConfigError("--mode must be 'statistic' or 'channel'");
        }
    }
    if (!cli.designs.empty()) {
        spec.designs.clear();
        std::string item;
        std::istringstream in(cli.designs);
        while (std::getline(in, item, ',')) {
            if (item == "serm") {
                spec.designs.push_back(noma::DesignKind::Serm);
            } else if (item == "med") {
                spec.designs.push_back(noma::DesignKind::Med);
            } else if (item == "custom") {
                spec.designs.push_back(noma::DesignKind::Custom);
            } else if (!item.empty()) {
                throw noma::ConfigError("unknown design '" + item + "'");
            }
        }
    }
    spec.output_path = cli.output_path;
    spec.validate();
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-constellation design and exact/simulated SSER evaluation "
                 "for a two-user noncoherent massive-antenna uplink"};
    app.set_version_flag("--version", std::string(noma::kToolName) + " " + noma::kToolVersion);
    app.require_subcommand(1);

    CliOverrides cli;
    bool inject_fault = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", cli.config_path, "key = value config file");
        sub->add_flag("--demo", cli.demo, "use the built-in demo system");
        sub->add_option("--trials", cli.trials, "Monte Carlo trials (enables MC)");
        sub->add_option("--seed", cli.seed, "Monte Carlo master seed");
        sub->add_option("--workers", cli.workers, "Monte Carlo worker threads");
        sub->add_option("--mode", cli.mode, "Monte Carlo mode: statistic|channel");
        sub->add_option("--designs", cli.designs, "comma list: serm,med,custom");
    };

    CLI::App* design = app.add_subcommand("design", "solve for constellation designs");
    add_common(design);
    design->add_option("-o,--output", cli.output_path, "write a JSON design report");

    CLI::App* sweep = app.add_subcommand("sweep", "evaluate designs across antenna counts");
    add_common(sweep);
    sweep->add_option("-o,--output", cli.output_path, "CSV output path");

    CLI::App* validate = app.add_subcommand("validate", "run internal consistency checks");
    add_common(validate);
    validate->add_flag("--inject-threshold-error", inject_fault,
                       "perturb detector thresholds to force a failure (self-test)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (design->parsed()) {
            noma::run_design(make_spec(cli), std::cout);
            return kExitOk;
        }
        if (sweep->parsed()) {
            const noma::ExperimentSpec spec = make_spec(cli);
            const std::string csv = noma::run_sweep(spec, std::cout);
            if (spec.output_path.empty()) std::cout << csv;
            return kExitOk;
        }
        const auto results = noma::run_validate(make_spec(cli), std::cout, inject_fault);
        for (const auto& r : results) {
            if (!r.pass) return kExitValidation;
        }
        return kExitOk;
    } catch (const noma::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const noma::InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const noma::CollisionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const noma::OrderingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const noma::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
