#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dpsubmod/experiment_config.hpp"
#include "dpsubmod/fixture.hpp"
#include "dpsubmod/harness.hpp"
#include "dpsubmod/lemma_checks.hpp"
#include "dpsubmod/tree_aggregation.hpp"
#include "dpsubmod/version.hpp"

namespace {

namespace fs = std::filesystem;
using namespace dpsubmod;

struct RunFlags {
    std::optional<std::string> config_file;
    std::optional<std::string> algorithm;
    std::optional<std::string> adversary;
    std::optional<int> n;
    std::optional<double> range_bound;
    std::optional<std::string> epsilon;
    std::optional<std::string> horizons;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::optional<double> h_override;
    std::optional<double> gamma_override;
    std::optional<double> tree_bound_override;
    std::optional<std::string> initial_set;
    std::optional<std::string> initial_point;
    std::optional<std::uint64_t> planted_set;
    std::optional<std::int64_t> switch_period;
    std::optional<std::string> sequence_file;
    std::optional<std::string> out_dir;
};

ExperimentConfig merge_flags(const RunFlags& flags) {
    ExperimentConfig config;
    if (flags.config_file) config = load_config_file(*flags.config_file);
    if (flags.algorithm) config.algorithm = *flags.algorithm;
    if (flags.adversary) config.adversary = *flags.adversary;
    if (flags.n) config.n = *flags.n;
    if (flags.range_bound) config.range_bound = *flags.range_bound;
    if (flags.epsilon) config.epsilon = *flags.epsilon;
    if (flags.horizons) {
        std::istringstream ss(*flags.horizons);
        std::string token;
        config.horizons.clear();
        while (std::getline(ss, token, ',')) {
            if (!token.empty()) config.horizons.push_back(std::stoll(token));
        }
    }
    if (flags.trials) config.trials = *flags.trials;
    if (flags.seed) config.seed = *flags.seed;
    if (flags.h_override) config.h_override = *flags.h_override;
    if (flags.gamma_override) config.gamma_override = *flags.gamma_override;
    if (flags.tree_bound_override) config.tree_bound_override = *flags.tree_bound_override;
    if (flags.initial_set) config.initial_set = *flags.initial_set;
    if (flags.initial_point) config.initial_point = *flags.initial_point;
    if (flags.planted_set) config.planted_set = static_cast<Subset>(*flags.planted_set);
    if (flags.switch_period) config.switch_period = *flags.switch_period;
    if (flags.sequence_file) config.sequence_file = *flags.sequence_file;
    if (flags.out_dir) config.out_dir = *flags.out_dir;
    return config;
}

/// Removes everything this run created if it fails partway.
class OutputJanitor {
  public:
    void track(const fs::path& p) { created_.push_back(p); }
    void commit() { created_.clear(); }
    ~OutputJanitor() {
        for (const auto& p : created_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }

  private:
    std::vector<fs::path> created_;
};

int run_command(const RunFlags& flags) {
    const ExperimentConfig config = merge_flags(flags);
    const ExperimentSpec spec = resolve_experiment(config);

    const fs::path out_dir(config.out_dir);
    fs::create_directories(out_dir);
    OutputJanitor janitor;

    if (std::isinf(spec.epsilon)) {
        std::cout << "NON-PRIVATE RUN: noise disabled (epsilon = inf); "
                     "no privacy guarantee applies\n";
    }

    const ExperimentResult result = run_experiment(spec);

    for (const auto& hr : result.horizons) {
        for (const auto& trace : hr.traces) {
            const fs::path path = out_dir / trace_file_name(config, hr.horizon, trace.meta.trial);
            std::ofstream file(path);
            if (!file) throw std::runtime_error("cannot write " + path.string());
            janitor.track(path);
            write_trace_csv(file, trace);
        }
    }
    const fs::path summary_path = out_dir / "summary.txt";
    {
        std::ofstream file(summary_path);
        if (!file) throw std::runtime_error("cannot write " + summary_path.string());
        janitor.track(summary_path);
        write_experiment_summary(file, config, spec, result);
    }
    janitor.commit();

    write_experiment_summary(std::cout, config, spec, result);
    std::cout << "wrote " << summary_path.string() << "\n";
    return 0;
}

int tbap_command(int dim, std::int64_t rounds, const std::string& epsilon_text,
                 double norm_bound, std::uint64_t seed, bool no_noise,
                 const std::optional<std::string>& input) {
    double epsilon = parse_epsilon(epsilon_text);
    if (no_noise) epsilon = std::numeric_limits<double>::infinity();

    NoisyPrefixSumTree tree(NoisyPrefixSumTree::Config{
        .capacity = rounds,
        .dimension = dim,
        .norm_bound = norm_bound,
        .epsilon = epsilon,
        .seed = seed,
    });

    std::ifstream file;
    std::istream* in = &std::cin;
    if (input) {
        file.open(*input);
        if (!file) throw std::runtime_error("cannot open " + *input);
        in = &file;
    }

    std::cout << std::setprecision(17);
    std::cout << "# dpsubmod tbap v1 dim=" << dim << " rounds=" << rounds
              << " norm-bound=" << norm_bound;
    if (tree.is_private()) {
        std::cout << " epsilon=" << epsilon << "\n";
    } else {
        std::cout << " epsilon=inf NON-PRIVATE (noise disabled)\n";
    }

    std::string line;
    std::vector<double> z(static_cast<std::size_t>(dim));
    std::int64_t consumed = 0;
    while (consumed < rounds && std::getline(*in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        for (int k = 0; k < dim; ++k) {
            if (!(ss >> z[static_cast<std::size_t>(k)])) {
                throw std::runtime_error("input line has fewer than dim values: " + line);
            }
        }
        const auto v = tree.append(z);
        ++consumed;
        for (int k = 0; k < dim; ++k) std::cout << (k ? " " : "") << v[static_cast<std::size_t>(k)];
        std::cout << "\n";
    }
    return 0;
}

int verify_lemmas_command(std::uint64_t seed) {
    const LemmaReport report = verify_lemma_suite(seed);
    write_lemma_report(std::cout, report);
    return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"differentially private online submodular minimization benchmark"};
    app.set_version_flag("--version", std::string(dpsubmod::kVersion));
    app.require_subcommand(1);

    RunFlags run_flags;
    auto* run = app.add_subcommand("run", "run a regret experiment and emit CSV traces");
    run->add_option("--config", run_flags.config_file, "config file (flags override it)");
    run->add_option("--algorithm", run_flags.algorithm, "full-info | bandit");
    run->add_option("--adversary", run_flags.adversary,
                    "stochastic-fixed-optimum | random-cut-stream | switching | explicit-sequence");
    run->add_option("--n", run_flags.n, "ground-set size");
    run->add_option("--range-bound", run_flags.range_bound, "bound M on |f|");
    run->add_option("--epsilon", run_flags.epsilon, "privacy budget (positive real or 'inf')");
    run->add_option("--horizons", run_flags.horizons, "comma-separated horizons T");
    run->add_option("--trials", run_flags.trials, "independent trials per horizon");
    run->add_option("--seed", run_flags.seed, "experiment seed");
    run->add_option("--h-override", run_flags.h_override, "override the theorem default H");
    run->add_option("--gamma-override", run_flags.gamma_override,
                    "override the theorem default exploration rate");
    run->add_option("--tree-bound-override", run_flags.tree_bound_override,
                    "override the aggregation-tree norm bound");
    run->add_option("--initial-set", run_flags.initial_set, "full-info S_1, e.g. '{1,3}'");
    run->add_option("--initial-point", run_flags.initial_point,
                    "bandit x_1 as comma-separated coordinates");
    run->add_option("--planted-set", run_flags.planted_set, "planted optimum mask");
    run->add_option("--switch-period", run_flags.switch_period, "switching adversary period");
    run->add_option("--sequence-file", run_flags.sequence_file,
                    "function records for explicit-sequence");
    run->add_option("--out-dir", run_flags.out_dir, "output directory");

    int tbap_dim = 1;
    std::int64_t tbap_rounds = 0;
    std::string tbap_epsilon = "1";
    double tbap_norm_bound = 1.0;
    std::uint64_t tbap_seed = 0;
    bool tbap_no_noise = false;
    std::optional<std::string> tbap_input;
    auto* tbap = app.add_subcommand(
        "tbap", "standalone stream aggregation: read vectors, write noisy prefix sums");
    tbap->add_option("--dim", tbap_dim, "vector dimension")->required();
    tbap->add_option("--rounds", tbap_rounds, "stream capacity T")->required();
    tbap->add_option("--epsilon", tbap_epsilon, "privacy budget (positive real or 'inf')");
    tbap->add_option("--norm-bound", tbap_norm_bound, "L2 bound each input must satisfy");
    tbap->add_option("--seed", tbap_seed, "noise seed");
    tbap->add_flag("--no-noise", tbap_no_noise, "disable noise (non-private)");
    tbap->add_option("--input", tbap_input, "read vectors from file instead of stdin");

    std::uint64_t lemma_seed = 0;
    auto* verify = app.add_subcommand("verify-lemmas",
                                      "run the statistical verifier suite; exit 0 on all-pass");
    verify->add_option("--seed", lemma_seed, "verifier seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_command(run_flags);
        if (tbap->parsed()) {
            return tbap_command(tbap_dim, tbap_rounds, tbap_epsilon, tbap_norm_bound, tbap_seed,
                                tbap_no_noise, tbap_input);
        }
        if (verify->parsed()) return verify_lemmas_command(lemma_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
