#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dpsubmod/adversary.hpp"
#include "dpsubmod/learners.hpp"
#include "dpsubmod/set_function.hpp"

namespace dpsubmod {

/// Exact hindsight optimum over all 2^n fixed sets, maintained incrementally
/// with one O(2^n) pass per observed function. n <= 16.
class HindsightAccumulator {
  public:
    explicit HindsightAccumulator(int n);

    void add(const SetFunction& f);

    /// Minimizing set so far; ties broken by smallest mask. With no
    /// functions added yet this is ({}, 0).
    std::pair<Subset, double> best() const;

    std::int64_t rounds() const { return rounds_; }

  private:
    int n_;
    std::int64_t rounds_ = 0;
    std::vector<double> totals_;
};

/// min over S of sum_t f_t(S), with the minimizing set.
std::pair<Subset, double> best_fixed_set(std::span<const SetFunction> functions, int n);

enum class LearnerAlgorithm { kFullInfo, kBandit };
std::string to_string(LearnerAlgorithm algorithm);

struct TraceMetadata {
    LearnerAlgorithm algorithm = LearnerAlgorithm::kFullInfo;
    int n = 0;
    std::int64_t horizon = 0;
    double range_bound = 0.0;
    double epsilon = 0.0;  // infinity = noise disabled
    bool noise_enabled = true;
    double strong_convexity = 0.0;
    double exploration = 0.0;      // bandit only, 0 otherwise
    bool exploration_clamped = false;
    double tree_norm_bound = 0.0;
    double analysis_lipschitz = 0.0;
    std::uint64_t experiment_seed = 0;
    int trial = 0;
};

/// One replay of a learner against an adversary, with exact regret
/// accounting against the best fixed set in hindsight.
struct RegretTrace {
    TraceMetadata meta;
    std::vector<Subset> sets;    // chosen set per round
    std::vector<double> costs;   // incurred cost per round
    double cumulative_cost = 0.0;
    Subset best_set = 0;
    double best_cost = 0.0;
    double regret = 0.0;             // cumulative_cost - best_cost
    std::int64_t oracle_queries = 0; // bandit: exactly one per round
};

/// Writes a trace as CSV (schema v1): one row per round with columns
/// t, set, cost, cum_cost, regret; regret_t = cum_cost_t - best_cost.
void write_trace_csv(std::ostream& out, const RegretTrace& trace);

struct LearnerOverrides {
    std::optional<double> strong_convexity;
    std::optional<double> gradient_bound;   // full-info tree bound / bandit tree bound
    std::optional<double> exploration;
    std::optional<Subset> initial_set;
    std::optional<std::vector<double>> initial_point;
};

struct ResolvedLearnerParams {
    double strong_convexity = 0.0;
    double exploration = 0.0;
    bool exploration_clamped = false;
    double tree_norm_bound = 0.0;
    double analysis_lipschitz = 0.0;
};

ResolvedLearnerParams resolve_learner_params(LearnerAlgorithm algorithm, int n,
                                             std::int64_t horizon, double range_bound,
                                             const LearnerOverrides& overrides);

struct ExperimentSpec {
    LearnerAlgorithm algorithm = LearnerAlgorithm::kFullInfo;
    AdversaryConfig adversary;
    std::vector<std::int64_t> horizons;
    double epsilon = 1.0;
    int trials = 1;
    std::uint64_t seed = 0;
    LearnerOverrides overrides;
};

struct HorizonResult {
    std::int64_t horizon = 0;
    ResolvedLearnerParams params;
    std::vector<RegretTrace> traces;
    double mean_regret = 0.0;
};

struct SlopeFit {
    bool defined = false;
    double slope = 0.0;
    std::string note;  // why the fit is undefined, when it is
};

/// Least-squares slope of log(mean regret) against log(horizon). Undefined
/// when any mean regret is nonpositive (noise-dominated regime).
SlopeFit fit_regret_slope(std::span<const std::int64_t> horizons,
                          std::span<const double> mean_regrets);

struct ExperimentResult {
    std::vector<HorizonResult> horizons;
    SlopeFit slope;  // fitted when >= 2 horizons are defined
};

/// One trial at one horizon. Deterministic given (spec, horizon, trial):
/// the adversary, learner, and tree streams are all derived from the
/// experiment seed and the trial index.
RegretTrace run_trial(const ExperimentSpec& spec, std::int64_t horizon, int trial);

ExperimentResult run_experiment(const ExperimentSpec& spec);

}  // namespace dpsubmod
