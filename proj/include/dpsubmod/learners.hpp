#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dpsubmod/lovasz.hpp"
#include "dpsubmod/rng.hpp"
#include "dpsubmod/set_function.hpp"
#include "dpsubmod/tree_aggregation.hpp"

namespace dpsubmod {

/// Exact coordinatewise minimizer of
///   v.x + (h/2) * sum_{j<=t} |x - x_j|^2   over [0,1]^n,
/// given only sum_x = sum_{j<=t} x_j. The objective is separable and
/// strictly convex per coordinate: x*_i = clamp((sum_x_i - v_i/h) / t, 0, 1).
std::vector<double> ftal_argmin(std::span<const double> v, std::span<const double> sum_x,
                                std::int64_t t, double h);

struct RoundOutcome {
    Subset chosen_set = 0;
    double cost = 0.0;
    std::vector<double> iterate;  // the x_t the set was drawn from
};

// Parameter defaults from the regret analyses. The hidden constants are
// taken as 1; callers may override every value.
double default_full_info_strong_convexity(double range_bound, int n, std::int64_t horizon);
double full_info_gradient_bound(double range_bound, int n, double strong_convexity);
double default_bandit_strong_convexity(double range_bound, int n, std::int64_t horizon);

struct ExplorationRate {
    double value;
    bool clamped;  // true when n / T^(1/4) exceeded 1 and was clamped
};
ExplorationRate default_bandit_exploration(int n, std::int64_t horizon);

/// Worst-case L2 norm of what the bandit learner actually streams into the
/// aggregation tree: |g_hat| <= 2M(n+1)/gamma plus |h*x| <= h*sqrt(n).
double bandit_stream_norm_bound(double range_bound, int n, double strong_convexity,
                                double exploration);
/// The analysis constant L = 4M + 2h*sqrt(n); reported in run metadata but
/// not used for noise calibration (the stream bound above is larger).
double bandit_analysis_lipschitz(double range_bound, int n, double strong_convexity);

/// Full-information online submodular minimizer. Each round it draws a
/// level set from the current iterate, observes the whole function, feeds
/// the regularized Lovasz subgradient through the private aggregation tree,
/// and recenters the iterate with ftal_argmin.
class FullInfoLearner {
  public:
    struct Config {
        int n = 0;
        std::int64_t horizon = 0;
        double range_bound = 0.0;       // M
        double epsilon = 0.0;           // infinity = noise off (non-private)
        double strong_convexity = 0.0;  // H
        double gradient_bound = 0.0;    // L = 4M + H*sqrt(n), tree norm bound
        Subset initial_set = 0;         // S_1; iterate starts at its vertex
        std::uint64_t seed = 0;
    };

    explicit FullInfoLearner(const Config& config);

    RoundOutcome play_round(const SetFunction& f);

    std::int64_t round() const { return t_; }
    std::span<const double> iterate() const { return x_; }
    std::span<const double> iterate_sum() const { return sum_x_; }
    const Config& config() const { return config_; }

  private:
    Config config_;
    Rng action_rng_;
    NoisyPrefixSumTree tree_;
    std::vector<double> x_;
    std::vector<double> sum_x_;
    std::int64_t t_ = 0;
};

/// One draw of the bandit sampling distribution over the chain sets:
/// rho_i = (1 - gamma) * mu_i + gamma / (n + 1).
struct BanditDraw {
    int index;                 // i in 0..n, position in the chain
    Subset chosen_set;         // chain[i]
    std::vector<double> rho;   // the full distribution, n+1 entries
};

BanditDraw bandit_sample_set(const ChainDecomposition& chain, double gamma, Rng& rng);

/// One-point subgradient estimate from a single evaluation f_value = f(B_i):
///   i = 0:        -(1/rho_0) f e(first chain element)
///   i = n:        +(1/rho_n) f e(last chain element)
///   0 < i < n:    +(2/rho_i) f e(chain element i)     if xi = +1
///                 -(2/rho_i) f e(chain element i+1)   if xi = -1
/// Averaging over (i, xi) telescopes to the chain subgradient; the norm is
/// at most 2M(n+1)/gamma.
std::vector<double> bandit_gradient_estimate(const ChainDecomposition& chain,
                                             std::span<const double> rho, int index,
                                             double f_value, int xi);

/// Bandit-feedback online submodular minimizer. Observes only the value of
/// the chosen set, queried through the cost oracle exactly once per round.
class BanditLearner {
  public:
    using CostOracle = std::function<double(Subset)>;

    struct Config {
        int n = 0;
        std::int64_t horizon = 0;
        double range_bound = 0.0;       // M
        double epsilon = 0.0;
        double strong_convexity = 0.0;  // H
        double exploration = 0.0;       // gamma in (0, 1]
        double tree_norm_bound = 0.0;   // defaults to bandit_stream_norm_bound
        std::optional<std::vector<double>> initial_point;  // default all-1/2
        std::uint64_t seed = 0;
    };

    explicit BanditLearner(const Config& config);

    RoundOutcome play_round(const CostOracle& cost);

    std::int64_t round() const { return t_; }
    std::span<const double> iterate() const { return x_; }
    /// The raw one-point estimate g_hat from the latest round, before the
    /// h*x regularization term is added.
    std::span<const double> last_gradient_estimate() const { return last_estimate_; }
    const Config& config() const { return config_; }

  private:
    Config config_;
    Rng action_rng_;
    NoisyPrefixSumTree tree_;
    std::vector<double> x_;
    std::vector<double> sum_x_;
    std::vector<double> last_estimate_;
    std::int64_t t_ = 0;
};

}  // namespace dpsubmod
