#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dpsubmod/harness.hpp"

namespace dpsubmod {

/// Flag-level experiment configuration. Every field corresponds to a CLI
/// flag of the same name; a config file holds "key value" lines with the
/// same keys, `#` comments allowed, flags overriding file entries. Summary
/// files echo the configuration in this format, so a summary header can be
/// replayed as a config file.
struct ExperimentConfig {
    std::string algorithm = "full-info";  // full-info | bandit
    std::string adversary = "stochastic-fixed-optimum";
    int n = 4;
    double range_bound = 1.0;
    std::string epsilon = "1";  // positive real or "inf"
    std::vector<std::int64_t> horizons = {1024};
    int trials = 1;
    std::uint64_t seed = 0;
    std::optional<double> h_override;
    std::optional<double> gamma_override;
    std::optional<double> tree_bound_override;
    std::optional<std::string> initial_set;    // e.g. "{1,3}" or mask integer
    std::optional<std::string> initial_point;  // comma-separated coordinates
    Subset planted_set = 0;
    std::int64_t switch_period = 64;
    std::optional<std::string> sequence_file;
    std::string out_dir = "out";
};

/// Parses "key value" lines; unknown keys are an error. Keys match the
/// ExperimentConfig field names with dashes (e.g. "range-bound").
ExperimentConfig parse_config_file(std::istream& in, ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {});

/// "inf" (or "infinity") maps to +infinity; otherwise a positive real.
/// Anything else, including 0 and negatives, is rejected: epsilon must be
/// positive or inf.
double parse_epsilon(const std::string& text);

Subset parse_subset(const std::string& text, int n);

/// Validates and lowers the flag-level config into a runnable spec.
ExperimentSpec resolve_experiment(const ExperimentConfig& config);

/// Writes the summary record: a config echo (replayable as a config file),
/// resolved parameters per horizon, mean regrets, and the fitted slope.
/// Non-private runs carry a NON-PRIVATE banner.
void write_experiment_summary(std::ostream& out, const ExperimentConfig& config,
                              const ExperimentSpec& spec, const ExperimentResult& result);

std::string trace_file_name(const ExperimentConfig& config, std::int64_t horizon, int trial);

}  // namespace dpsubmod
