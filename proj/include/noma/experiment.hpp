#ifndef NOMA_EXPERIMENT_HPP
#define NOMA_EXPERIMENT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "noma/constellation.hpp"
#include "noma/simulator.hpp"

namespace noma {

inline constexpr const char* kToolName = "nomasim";
inline constexpr const char* kToolVersion = "0.1.0";

// Configuration / input errors (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Output I/O failures (CLI exit code 5).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class DesignKind { Serm, Med, Custom };

std::string design_kind_name(DesignKind k);

struct ExperimentSpec {
    SystemConfig config;
    std::vector<int> n_sweep;          // antenna counts, strictly increasing
    std::vector<DesignKind> designs{DesignKind::Serm, DesignKind::Med};
    NestedDesign custom;               // used by DesignKind::Custom
    bool has_custom = false;
    McConfig mc;
    bool mc_enabled = false;
    std::string output_path;

    void validate() const;  // throws ConfigError
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// Key/value config file: one `key = value` per line, `#` comments, unknown
// keys rejected. Power may be given as p1_dbm/p2_dbm or p1_w/p2_w.
ExperimentSpec parse_config_file(const std::string& path);
ExperimentSpec parse_config_text(const std::string& text, const std::string& origin);

// Built-in demo: symmetric 316 mW budgets, unit gains, sigma^2 = 0.1, M = 2,
// N swept over {8, 16, ..., 512}, optimized and equal-gap designs.
ExperimentSpec default_demo_spec();

// `design` subcommand: solve for the requested designs at the configured
// system, print a human-readable summary, optionally write a JSON report.
void run_design(const ExperimentSpec& spec, std::ostream& out);

// `sweep` subcommand: evaluate every (N, design) pair, return the CSV text
// (also written to spec.output_path when set, together with a .meta.txt
// run-description file). Byte-identical for identical specs.
std::string run_sweep(const ExperimentSpec& spec, std::ostream& log);

// One self-check performed by the `validate` subcommand.
struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double bound = 0.0;
    std::string note;
};

// Runs the internal consistency checks (detector equivalence, closed form vs
// Monte Carlo, closed form vs grid, gamma CDF cross-check, success-prob
// identity). `inject_threshold_fault` deliberately perturbs the detector
// thresholds to prove the checks can fail. Prints one `check=... status=...`
// line per check to `out`.
std::vector<CheckResult> run_validate(const ExperimentSpec& spec, std::ostream& out,
                                      bool inject_threshold_fault = false);

}  // namespace noma

#endif
