#include "dpsubmod/experiment_config.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dpsubmod/fixture.hpp"
#include "dpsubmod/version.hpp"

namespace dpsubmod {

namespace {

std::vector<std::int64_t> parse_horizons(const std::string& text) {
    std::vector<std::int64_t> horizons;
    std::string token;
    std::istringstream ss(text);
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        horizons.push_back(std::stoll(token));
    }
    if (horizons.empty()) throw std::invalid_argument("horizons: empty list");
    return horizons;
}

std::string format_horizons(const std::vector<std::int64_t>& horizons) {
    std::string out;
    for (std::size_t i = 0; i < horizons.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(horizons[i]);
    }
    return out;
}

}  // namespace

double parse_epsilon(const std::string& text) {
    if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
    double value = 0.0;
    try {
        std::size_t pos = 0;
        value = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw std::invalid_argument("epsilon: expected a positive real or 'inf', got '" + text +
                                    "'");
    }
    if (!(value > 0.0)) {
        throw std::invalid_argument("epsilon must be positive (or 'inf' for the non-private "
                                    "noise-free mode); got " + text);
    }
    return value;
}

Subset parse_subset(const std::string& text, int n) {
    Subset s = 0;
    if (!text.empty() && text.front() == '{') {
        if (text.back() != '}') throw std::invalid_argument("subset: missing closing brace");
        std::string inner = text.substr(1, text.size() - 2);
        std::istringstream ss(inner);
        std::string token;
        while (std::getline(ss, token, ',')) {
            if (token.empty()) continue;
            const int element = std::stoi(token);
            if (element < 1 || element > n) {
                throw std::invalid_argument("subset: element " + token + " outside 1.." +
                                            std::to_string(n));
            }
            s = with_element(s, element);
        }
        return s;
    }
    s = static_cast<Subset>(std::stoul(text));
    if ((s & ~full_set(n)) != 0) {
        throw std::invalid_argument("subset: mask " + text + " has bits outside the ground set");
    }
    return s;
}

ExperimentConfig parse_config_file(std::istream& in, ExperimentConfig base) {
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string key;
        if (!(ss >> key) || key[0] == '#') continue;
        std::string value;
        std::getline(ss, value);
        const auto start = value.find_first_not_of(" \t");
        value = (start == std::string::npos) ? std::string{} : value.substr(start);
        const auto end = value.find_last_not_of(" \t\r");
        if (end != std::string::npos) value = value.substr(0, end + 1);
        if (value.empty()) throw std::invalid_argument("config: key '" + key + "' has no value");

        if (key == "algorithm") base.algorithm = value;
        else if (key == "adversary") base.adversary = value;
        else if (key == "n") base.n = std::stoi(value);
        else if (key == "range-bound") base.range_bound = std::stod(value);
        else if (key == "epsilon") base.epsilon = value;
        else if (key == "horizons") base.horizons = parse_horizons(value);
        else if (key == "trials") base.trials = std::stoi(value);
        else if (key == "seed") base.seed = std::stoull(value);
        else if (key == "h-override") base.h_override = std::stod(value);
        else if (key == "gamma-override") base.gamma_override = std::stod(value);
        else if (key == "tree-bound-override") base.tree_bound_override = std::stod(value);
        else if (key == "initial-set") base.initial_set = value;
        else if (key == "initial-point") base.initial_point = value;
        else if (key == "planted-set") base.planted_set = static_cast<Subset>(std::stoul(value));
        else if (key == "switch-period") base.switch_period = std::stoll(value);
        else if (key == "sequence-file") base.sequence_file = value;
        else if (key == "out-dir") base.out_dir = value;
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    return base;
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    return parse_config_file(in, std::move(base));
}

ExperimentSpec resolve_experiment(const ExperimentConfig& config) {
    ExperimentSpec spec;
    if (config.algorithm == "full-info") {
        spec.algorithm = LearnerAlgorithm::kFullInfo;
    } else if (config.algorithm == "bandit") {
        spec.algorithm = LearnerAlgorithm::kBandit;
    } else {
        throw std::invalid_argument("algorithm must be full-info or bandit, got '" +
                                    config.algorithm + "'");
    }
    if (config.n < 1) throw std::invalid_argument("n must be >= 1");
    if (config.n > 16) {
        throw std::invalid_argument(
            "n must be <= 16: regret accounting minimizes over all 2^n sets exhaustively");
    }
    if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
    for (auto h : config.horizons) {
        if (h < 1) throw std::invalid_argument("horizons must be >= 1");
    }
    if (!(config.range_bound > 0.0)) throw std::invalid_argument("range-bound must be positive");

    spec.adversary.kind = adversary_kind_from_string(config.adversary);
    spec.adversary.n = config.n;
    spec.adversary.range_bound = config.range_bound;
    spec.adversary.planted_set = config.planted_set;
    spec.adversary.switch_period = config.switch_period;
    if (spec.adversary.kind == AdversaryKind::kExplicitSequence) {
        if (!config.sequence_file) {
            throw std::invalid_argument("explicit-sequence adversary needs sequence-file");
        }
        spec.adversary.sequence = load_function_sequence(*config.sequence_file);
        for (const auto& f : spec.adversary.sequence) {
            if (f.ground_size() <= 16) {
                const auto check = check_submodular(f);
                if (!check.submodular) {
                    throw std::invalid_argument(
                        "sequence-file: function is not submodular (witness base mask " +
                        std::to_string(check.witness->base) + ")");
                }
            }
        }
    }

    spec.epsilon = parse_epsilon(config.epsilon);
    spec.trials = config.trials;
    spec.seed = config.seed;
    spec.horizons = config.horizons;
    spec.overrides.strong_convexity = config.h_override;
    spec.overrides.gradient_bound = config.tree_bound_override;
    if (config.gamma_override) {
        if (!(*config.gamma_override > 0.0) || *config.gamma_override > 1.0) {
            throw std::invalid_argument("gamma-override must lie in (0, 1]");
        }
        spec.overrides.exploration = config.gamma_override;
    }
    if (config.initial_set) {
        spec.overrides.initial_set = parse_subset(*config.initial_set, config.n);
    }
    if (config.initial_point) {
        std::vector<double> coords;
        std::istringstream ss(*config.initial_point);
        std::string token;
        while (std::getline(ss, token, ',')) coords.push_back(std::stod(token));
        if (static_cast<int>(coords.size()) != config.n) {
            throw std::invalid_argument("initial-point needs exactly n coordinates");
        }
        spec.overrides.initial_point = std::move(coords);
    }
    return spec;
}

void write_experiment_summary(std::ostream& out, const ExperimentConfig& config,
                              const ExperimentSpec& spec, const ExperimentResult& result) {
    out << std::setprecision(17);
    out << "# dpsubmod summary v1 (library " << kVersion << ")\n";
    if (std::isinf(spec.epsilon)) {
        out << "# NON-PRIVATE RUN: noise disabled (epsilon = inf); no privacy guarantee\n";
    }
    out << "# --- configuration (replayable with --config) ---\n";
    out << "algorithm " << config.algorithm << "\n";
    out << "adversary " << config.adversary << "\n";
    out << "n " << config.n << "\n";
    out << "range-bound " << config.range_bound << "\n";
    out << "epsilon " << config.epsilon << "\n";
    out << "horizons " << format_horizons(config.horizons) << "\n";
    out << "trials " << config.trials << "\n";
    out << "seed " << config.seed << "\n";
    if (config.h_override) out << "h-override " << *config.h_override << "\n";
    if (config.gamma_override) out << "gamma-override " << *config.gamma_override << "\n";
    if (config.tree_bound_override) {
        out << "tree-bound-override " << *config.tree_bound_override << "\n";
    }
    if (config.initial_set) out << "initial-set " << *config.initial_set << "\n";
    if (config.initial_point) out << "initial-point " << *config.initial_point << "\n";
    if (config.planted_set != 0) out << "planted-set " << config.planted_set << "\n";
    if (config.adversary == "switching") out << "switch-period " << config.switch_period << "\n";
    if (config.sequence_file) out << "sequence-file " << *config.sequence_file << "\n";
    out << "# --- resolved parameters ---\n";
    for (const auto& hr : result.horizons) {
        out << "# T=" << hr.horizon << " h=" << hr.params.strong_convexity;
        if (spec.algorithm == LearnerAlgorithm::kBandit) {
            out << " gamma=" << hr.params.exploration
                << (hr.params.exploration_clamped ? " (clamped to 1)" : "");
        }
        out << " tree-bound=" << hr.params.tree_norm_bound
            << " analysis-L=" << hr.params.analysis_lipschitz << "\n";
    }
    out << "# --- results ---\n";
    for (const auto& hr : result.horizons) {
        out << "# mean-regret T=" << hr.horizon << " : " << hr.mean_regret
            << " (regret/T = " << hr.mean_regret / static_cast<double>(hr.horizon) << ")\n";
    }
    if (result.slope.defined) {
        out << "# log-log regret slope: " << result.slope.slope << "\n";
    } else {
        out << "# log-log regret slope undefined: " << result.slope.note << "\n";
    }
}

std::string trace_file_name(const ExperimentConfig& config, std::int64_t horizon, int trial) {
    return "trace_" + config.algorithm + "_T" + std::to_string(horizon) + "_trial" +
           std::to_string(trial) + ".csv";
}

}  // namespace dpsubmod
