#include "dpsubmod/harness.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace dpsubmod {

HindsightAccumulator::HindsightAccumulator(int n) : n_(n) {
    require_ground_size(n);
    if (n > 16) {
        throw std::invalid_argument("hindsight: exhaustive accounting supports n <= 16");
    }
    totals_.assign(std::size_t{1} << n, 0.0);
}

void HindsightAccumulator::add(const SetFunction& f) {
    if (f.ground_size() != n_) throw std::invalid_argument("hindsight: dimension mismatch");
    for (Subset s = 0; s < totals_.size(); ++s) {
        totals_[s] += f(s);
    }
    ++rounds_;
}

std::pair<Subset, double> HindsightAccumulator::best() const {
    if (rounds_ == 0) return {0, 0.0};
    Subset best = 0;
    double value = totals_[0];
    for (Subset s = 1; s < totals_.size(); ++s) {
        if (totals_[s] < value) {  // strict: ties keep the smallest mask
            value = totals_[s];
            best = s;
        }
    }
    return {best, value};
}

std::pair<Subset, double> best_fixed_set(std::span<const SetFunction> functions, int n) {
    HindsightAccumulator acc(n);
    for (const auto& f : functions) acc.add(f);
    return acc.best();
}

std::string to_string(LearnerAlgorithm algorithm) {
    return algorithm == LearnerAlgorithm::kFullInfo ? "full-info" : "bandit";
}

void write_trace_csv(std::ostream& out, const RegretTrace& trace) {
    out << std::setprecision(17);  // values survive a parse round trip
    out << "# dpsubmod trace v1\n";
    out << "# algorithm=" << to_string(trace.meta.algorithm) << " n=" << trace.meta.n
        << " T=" << trace.meta.horizon << " M=" << trace.meta.range_bound << " epsilon=";
    if (trace.meta.noise_enabled) {
        out << trace.meta.epsilon;
    } else {
        out << "inf (NON-PRIVATE)";
    }
    out << " h=" << trace.meta.strong_convexity;
    if (trace.meta.algorithm == LearnerAlgorithm::kBandit) {
        out << " gamma=" << trace.meta.exploration;
    }
    out << " tree-bound=" << trace.meta.tree_norm_bound << " seed=" << trace.meta.experiment_seed
        << " trial=" << trace.meta.trial << "\n";
    out << "t,set,cost,cum_cost,regret\n";
    double cum = 0.0;
    for (std::size_t i = 0; i < trace.sets.size(); ++i) {
        cum += trace.costs[i];
        out << (i + 1) << ',' << trace.sets[i] << ',' << trace.costs[i] << ',' << cum << ','
            << (cum - trace.best_cost) << '\n';
    }
}

ResolvedLearnerParams resolve_learner_params(LearnerAlgorithm algorithm, int n,
                                             std::int64_t horizon, double range_bound,
                                             const LearnerOverrides& overrides) {
    ResolvedLearnerParams p;
    if (algorithm == LearnerAlgorithm::kFullInfo) {
        p.strong_convexity = overrides.strong_convexity.value_or(
            default_full_info_strong_convexity(range_bound, n, horizon));
        p.tree_norm_bound = overrides.gradient_bound.value_or(
            full_info_gradient_bound(range_bound, n, p.strong_convexity));
        p.analysis_lipschitz = p.tree_norm_bound;
    } else {
        p.strong_convexity = overrides.strong_convexity.value_or(
            default_bandit_strong_convexity(range_bound, n, horizon));
        if (overrides.exploration) {
            p.exploration = *overrides.exploration;
        } else {
            const auto rate = default_bandit_exploration(n, horizon);
            p.exploration = rate.value;
            p.exploration_clamped = rate.clamped;
        }
        p.tree_norm_bound = overrides.gradient_bound.value_or(bandit_stream_norm_bound(
            range_bound, n, p.strong_convexity, p.exploration));
        p.analysis_lipschitz = bandit_analysis_lipschitz(range_bound, n, p.strong_convexity);
    }
    return p;
}

namespace {

TraceMetadata make_metadata(const ExperimentSpec& spec, std::int64_t horizon, int trial,
                            double range_bound, const ResolvedLearnerParams& params) {
    TraceMetadata meta;
    meta.algorithm = spec.algorithm;
    meta.n = spec.adversary.n;
    meta.horizon = horizon;
    meta.range_bound = range_bound;
    meta.epsilon = spec.epsilon;
    meta.noise_enabled = !std::isinf(spec.epsilon);
    meta.strong_convexity = params.strong_convexity;
    meta.exploration = params.exploration;
    meta.exploration_clamped = params.exploration_clamped;
    meta.tree_norm_bound = params.tree_norm_bound;
    meta.analysis_lipschitz = params.analysis_lipschitz;
    meta.experiment_seed = spec.seed;
    meta.trial = trial;
    return meta;
}

// Stream ids for deriving per-trial seeds from the experiment seed. The
// horizon participates so different horizons replay with fresh randomness.
std::uint64_t trial_stream(std::int64_t horizon, int trial, std::uint64_t salt) {
    return (static_cast<std::uint64_t>(horizon) << 24) ^
           (static_cast<std::uint64_t>(trial) << 4) ^ salt;
}

}  // namespace

RegretTrace run_trial(const ExperimentSpec& spec, std::int64_t horizon, int trial) {
    if (horizon < 1) throw std::invalid_argument("run_trial: horizon must be >= 1");
    if (trial < 0) throw std::invalid_argument("run_trial: trial must be >= 0");
    const int n = spec.adversary.n;

    AdversaryConfig adv_config = spec.adversary;
    adv_config.seed = Rng::derive(spec.seed, trial_stream(horizon, trial, 0xADu)).next_u64();
    const Adversary adversary(adv_config);

    // the adversary may raise the range bound to cover an explicit sequence;
    // parameters must be calibrated against what the learner will face
    const auto params = resolve_learner_params(spec.algorithm, n, horizon,
                                               adversary.range_bound(), spec.overrides);

    RegretTrace trace;
    trace.meta = make_metadata(spec, horizon, trial, adversary.range_bound(), params);
    trace.sets.reserve(static_cast<std::size_t>(horizon));
    trace.costs.reserve(static_cast<std::size_t>(horizon));

    HindsightAccumulator hindsight(n);
    const std::uint64_t learner_seed =
        Rng::derive(spec.seed, trial_stream(horizon, trial, 0x1Eu)).next_u64();

    if (spec.algorithm == LearnerAlgorithm::kFullInfo) {
        FullInfoLearner::Config config{
            .n = n,
            .horizon = horizon,
            .range_bound = adversary.range_bound(),
            .epsilon = spec.epsilon,
            .strong_convexity = params.strong_convexity,
            .gradient_bound = params.tree_norm_bound,
            .initial_set = spec.overrides.initial_set.value_or(0),
            .seed = learner_seed,
        };
        FullInfoLearner learner(config);
        for (std::int64_t t = 1; t <= horizon; ++t) {
            const SetFunction f = adversary.function_at(t);
            const auto outcome = learner.play_round(f);
            trace.sets.push_back(outcome.chosen_set);
            trace.costs.push_back(outcome.cost);
            trace.cumulative_cost += outcome.cost;
            hindsight.add(f);
        }
    } else {
        BanditLearner::Config config{
            .n = n,
            .horizon = horizon,
            .range_bound = adversary.range_bound(),
            .epsilon = spec.epsilon,
            .strong_convexity = params.strong_convexity,
            .exploration = params.exploration,
            .tree_norm_bound = params.tree_norm_bound,
            .initial_point = spec.overrides.initial_point,
            .seed = learner_seed,
        };
        BanditLearner learner(config);
        for (std::int64_t t = 1; t <= horizon; ++t) {
            const SetFunction f = adversary.function_at(t);
            // The learner sees only this counting single-point oracle; the
            // harness evaluates f freely for regret accounting below.
            const auto outcome = learner.play_round([&f, &trace](Subset s) {
                ++trace.oracle_queries;
                return f(s);
            });
            trace.sets.push_back(outcome.chosen_set);
            trace.costs.push_back(outcome.cost);
            trace.cumulative_cost += outcome.cost;
            hindsight.add(f);
        }
    }

    const auto [best_set, best_cost] = hindsight.best();
    trace.best_set = best_set;
    trace.best_cost = best_cost;
    trace.regret = trace.cumulative_cost - best_cost;
    return trace;
}

SlopeFit fit_regret_slope(std::span<const std::int64_t> horizons,
                          std::span<const double> mean_regrets) {
    if (horizons.size() != mean_regrets.size()) {
        throw std::invalid_argument("fit_regret_slope: size mismatch");
    }
    if (horizons.size() < 2) {
        return {false, 0.0, "need at least two horizons"};
    }
    for (std::size_t i = 0; i < horizons.size(); ++i) {
        if (!(mean_regrets[i] > 0.0)) {
            return {false, 0.0,
                    "mean regret nonpositive at T=" + std::to_string(horizons[i]) +
                        "; log-log slope undefined"};
        }
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto k = static_cast<double>(horizons.size());
    for (std::size_t i = 0; i < horizons.size(); ++i) {
        const double x = std::log(static_cast<double>(horizons[i]));
        const double y = std::log(mean_regrets[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = k * sxx - sx * sx;
    if (denom <= 0.0) return {false, 0.0, "degenerate horizon spacing"};
    return {true, (k * sxy - sx * sy) / denom, ""};
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    if (spec.horizons.empty()) throw std::invalid_argument("run_experiment: no horizons");
    if (spec.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
    // the effective bound depends only on the adversary config, not its seed
    const double range_bound = Adversary(spec.adversary).range_bound();
    ExperimentResult result;
    std::vector<std::int64_t> horizons;
    std::vector<double> means;
    for (const auto horizon : spec.horizons) {
        HorizonResult hr;
        hr.horizon = horizon;
        hr.params = resolve_learner_params(spec.algorithm, spec.adversary.n, horizon,
                                           range_bound, spec.overrides);
        double total = 0.0;
        for (int trial = 0; trial < spec.trials; ++trial) {
            hr.traces.push_back(run_trial(spec, horizon, trial));
            total += hr.traces.back().regret;
        }
        hr.mean_regret = total / spec.trials;
        horizons.push_back(horizon);
        means.push_back(hr.mean_regret);
        result.horizons.push_back(std::move(hr));
    }
    result.slope = fit_regret_slope(horizons, means);
    return result;
}

}  // namespace dpsubmod
