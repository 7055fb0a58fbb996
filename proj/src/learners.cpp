#include "dpsubmod/learners.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dpsubmod {

std::vector<double> ftal_argmin(std::span<const double> v, std::span<const double> sum_x,
                                std::int64_t t, double h) {
    if (v.size() != sum_x.size()) throw std::invalid_argument("ftal_argmin: dimension mismatch");
    if (t < 1) throw std::invalid_argument("ftal_argmin: need at least one past iterate");
    if (!(h > 0.0)) {
        throw std::invalid_argument("ftal_argmin: objective needs positive curvature");
    }
    std::vector<double> x(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double unconstrained = (sum_x[i] - v[i] / h) / static_cast<double>(t);
        x[i] = std::clamp(unconstrained, 0.0, 1.0);
    }
    return x;
}

// Balances the aggregation-noise term n(L + H sqrt(n))^2 log^2.5(T)/(eps H)
// against the regularization gap T H n / 2: both scale as sqrt(T) exactly
// when H shrinks as 1/sqrt(T). A regularizer that grows with T instead
// pins the iterate to the origin (the update's fixed point is
// -avg_gradient / H) and forces linear regret.
double default_full_info_strong_convexity(double range_bound, int n, std::int64_t horizon) {
    return range_bound / (std::sqrt(n) * std::sqrt(static_cast<double>(horizon)));
}

double full_info_gradient_bound(double range_bound, int n, double strong_convexity) {
    return 4.0 * range_bound + strong_convexity * std::sqrt(n);
}

double default_bandit_strong_convexity(double range_bound, int n, std::int64_t horizon) {
    return range_bound / (std::sqrt(n) * std::pow(static_cast<double>(horizon), 0.25));
}

ExplorationRate default_bandit_exploration(int n, std::int64_t horizon) {
    const double raw = n / std::pow(static_cast<double>(horizon), 0.25);
    if (raw > 1.0) return {1.0, true};
    return {raw, false};
}

double bandit_stream_norm_bound(double range_bound, int n, double strong_convexity,
                                double exploration) {
    return 2.0 * range_bound * (n + 1) / exploration + strong_convexity * std::sqrt(n);
}

double bandit_analysis_lipschitz(double range_bound, int n, double strong_convexity) {
    return 4.0 * range_bound + 2.0 * strong_convexity * std::sqrt(n);
}

namespace {

void check_function_matches(const SetFunction& f, int n, double range_bound) {
    if (f.ground_size() != n) {
        throw std::invalid_argument("learner: function ground set does not match the state");
    }
    if (f.range_bound() > range_bound * (1.0 + 1e-12)) {
        throw std::invalid_argument("learner: function range bound exceeds the declared M");
    }
}

template <typename Config>
const Config& validate_common(const Config& config) {
    require_ground_size(config.n);
    if (config.horizon < 1) throw std::invalid_argument("learner: horizon must be >= 1");
    if (!(config.range_bound > 0.0)) throw std::invalid_argument("learner: M must be positive");
    if (!(config.strong_convexity > 0.0)) {
        throw std::invalid_argument("learner: strong convexity must be positive");
    }
    return config;
}

const FullInfoLearner::Config& validate(const FullInfoLearner::Config& config) {
    validate_common(config);
    if ((config.initial_set & ~full_set(config.n)) != 0) {
        throw std::invalid_argument("learner: initial set has elements outside the ground set");
    }
    return config;
}

const BanditLearner::Config& validate(const BanditLearner::Config& config) {
    validate_common(config);
    if (!(config.exploration > 0.0) || config.exploration > 1.0) {
        throw std::invalid_argument("learner: exploration rate must be in (0, 1]");
    }
    return config;
}

}  // namespace

FullInfoLearner::FullInfoLearner(const Config& config)
    : config_(validate(config)),
      action_rng_(Rng::derive(config.seed, 1)),
      tree_(NoisyPrefixSumTree::Config{
          .capacity = config.horizon,
          .dimension = config.n,
          .norm_bound = config.gradient_bound,
          .epsilon = config.epsilon,
          .seed = Rng::derive(config.seed, 2).next_u64(),
      }),
      sum_x_(static_cast<std::size_t>(config.n), 0.0) {
    const auto start = HypercubePoint::vertex(config.initial_set, config.n);
    x_.assign(start.coords().begin(), start.coords().end());
}

RoundOutcome FullInfoLearner::play_round(const SetFunction& f) {
    if (t_ >= config_.horizon) throw std::runtime_error("learner: horizon exhausted");
    check_function_matches(f, config_.n, config_.range_bound);

    const HypercubePoint x(std::vector<double>(x_.begin(), x_.end()));
    RoundOutcome outcome;
    outcome.iterate = x_;
    outcome.chosen_set = sample_level_set(x, action_rng_);
    outcome.cost = f(outcome.chosen_set);

    auto g = regularized_subgradient(f, x, config_.strong_convexity);
    const auto v = tree_.append(g);

    ++t_;
    for (std::size_t i = 0; i < sum_x_.size(); ++i) sum_x_[i] += x_[i];
    x_ = ftal_argmin(v, sum_x_, t_, config_.strong_convexity);
    return outcome;
}

BanditDraw bandit_sample_set(const ChainDecomposition& chain, double gamma, Rng& rng) {
    if (!(gamma > 0.0) || gamma > 1.0) {
        throw std::invalid_argument("bandit_sample_set: exploration rate must be in (0, 1]");
    }
    const int n = chain.n();
    BanditDraw draw;
    draw.rho.resize(static_cast<std::size_t>(n) + 1);
    const double uniform_share = gamma / (n + 1);
    for (std::size_t i = 0; i < draw.rho.size(); ++i) {
        draw.rho[i] = (1.0 - gamma) * chain.weights[i] + uniform_share;
    }
    draw.index = rng.sample_discrete(draw.rho);
    draw.chosen_set = chain.chain[static_cast<std::size_t>(draw.index)];
    return draw;
}

std::vector<double> bandit_gradient_estimate(const ChainDecomposition& chain,
                                             std::span<const double> rho, int index,
                                             double f_value, int xi) {
    const int n = chain.n();
    if (index < 0 || index > n) {
        throw std::out_of_range("bandit_gradient_estimate: chain index out of range");
    }
    std::vector<double> g(static_cast<std::size_t>(n), 0.0);
    const double p = rho[static_cast<std::size_t>(index)];
    if (index == 0) {
        g[static_cast<std::size_t>(chain.order[0] - 1)] = -f_value / p;
    } else if (index == n) {
        g[static_cast<std::size_t>(chain.order[static_cast<std::size_t>(n) - 1] - 1)] =
            f_value / p;
    } else if (xi == +1) {
        g[static_cast<std::size_t>(chain.order[static_cast<std::size_t>(index) - 1] - 1)] =
            2.0 * f_value / p;
    } else if (xi == -1) {
        g[static_cast<std::size_t>(chain.order[static_cast<std::size_t>(index)] - 1)] =
            -2.0 * f_value / p;
    } else {
        throw std::invalid_argument("bandit_gradient_estimate: xi must be +1 or -1");
    }
    return g;
}

BanditLearner::BanditLearner(const Config& config)
    : config_(validate(config)),
      action_rng_(Rng::derive(config.seed, 1)),
      tree_(NoisyPrefixSumTree::Config{
          .capacity = config.horizon,
          .dimension = config.n,
          .norm_bound = config.tree_norm_bound > 0.0
                            ? config.tree_norm_bound
                            : bandit_stream_norm_bound(config.range_bound, config.n,
                                                       config.strong_convexity,
                                                       config.exploration),
          .epsilon = config.epsilon,
          .seed = Rng::derive(config.seed, 2).next_u64(),
      }),
      sum_x_(static_cast<std::size_t>(config.n), 0.0) {
    if (config.initial_point) {
        if (static_cast<int>(config.initial_point->size()) != config.n) {
            throw std::invalid_argument("learner: initial point dimension mismatch");
        }
        const HypercubePoint validated(*config.initial_point);
        x_.assign(validated.coords().begin(), validated.coords().end());
    } else {
        x_.assign(static_cast<std::size_t>(config.n), 0.5);
    }
}

RoundOutcome BanditLearner::play_round(const CostOracle& cost) {
    if (t_ >= config_.horizon) throw std::runtime_error("learner: horizon exhausted");

    const HypercubePoint x(std::vector<double>(x_.begin(), x_.end()));
    const auto chain = chain_decompose(x);
    const auto draw = bandit_sample_set(chain, config_.exploration, action_rng_);

    RoundOutcome outcome;
    outcome.iterate = x_;
    outcome.chosen_set = draw.chosen_set;
    outcome.cost = cost(draw.chosen_set);  // the single query this round

    const int n = config_.n;
    const int xi = (draw.index > 0 && draw.index < n) ? action_rng_.sign() : 0;
    auto g = bandit_gradient_estimate(chain, draw.rho, draw.index, outcome.cost,
                                      xi == 0 ? +1 : xi);
    last_estimate_ = g;
    for (int i = 0; i < n; ++i) {
        g[static_cast<std::size_t>(i)] += config_.strong_convexity * x_[static_cast<std::size_t>(i)];
    }
    const auto v = tree_.append(g);

    ++t_;
    for (std::size_t i = 0; i < sum_x_.size(); ++i) sum_x_[i] += x_[i];
    x_ = ftal_argmin(v, sum_x_, t_, config_.strong_convexity);
    return outcome;
}

}  // namespace dpsubmod
