#include "dpsubmod/lemma_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>

namespace dpsubmod {

namespace {

struct Instance {
    SetFunction f;
    HypercubePoint x;
    double gamma;
};

SetFunction random_submodular(Rng& rng, int n) {
    const int family = static_cast<int>(rng.uniform_int(0, 2));
    if (family == 0) {
        std::vector<WeightedEdge> edges;
        for (int i = 1; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j) {
                if (rng.uniform01() < 0.7) edges.push_back({i, j, rng.uniform(0.1, 1.0)});
            }
        }
        if (edges.empty()) edges.push_back({1, 2, 1.0});
        return make_cut_function(n, edges);
    }
    if (family == 1) {
        std::vector<double> weights(static_cast<std::size_t>(n));
        for (auto& w : weights) w = rng.uniform(-1.0, 1.0);
        return make_modular_function(weights);
    }
    // modular plus cut mixture
    std::vector<double> weights(static_cast<std::size_t>(n));
    for (auto& w : weights) w = rng.uniform(-0.5, 0.5);
    std::vector<WeightedEdge> edges;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) edges.push_back({i, j, rng.uniform01() * 0.3});
    }
    double bound = 0.0;
    for (double w : weights) bound += std::abs(w);
    for (const auto& e : edges) bound += e.weight;
    auto wptr = std::make_shared<std::vector<double>>(std::move(weights));
    auto eptr = std::make_shared<std::vector<WeightedEdge>>(std::move(edges));
    return SetFunction(n, bound, [wptr, eptr, n](Subset s) {
        double v = 0.0;
        for (int i = 1; i <= n; ++i) {
            if (contains(s, i)) v += (*wptr)[static_cast<std::size_t>(i - 1)];
        }
        for (const auto& e : *eptr) {
            if (contains(s, e.u) != contains(s, e.v)) v += e.weight;
        }
        return v;
    });
}

Instance random_instance(Rng& rng) {
    const int n = static_cast<int>(rng.uniform_int(2, 8));
    auto f = random_submodular(rng, n);
    std::vector<double> coords(static_cast<std::size_t>(n));
    for (auto& c : coords) c = rng.uniform01();
    const double gamma = rng.uniform(0.05, 1.0);
    return Instance{std::move(f), HypercubePoint(std::move(coords)), gamma};
}

std::vector<double> bandit_distribution(const ChainDecomposition& chain, double gamma) {
    std::vector<double> rho(chain.weights.size());
    const double uniform_share = gamma / static_cast<double>(chain.weights.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        rho[i] = (1.0 - gamma) * chain.weights[i] + uniform_share;
    }
    return rho;
}

}  // namespace

LemmaCheck check_estimator_unbiased(std::uint64_t seed, int instances,
                                    const GradientEstimator& estimator) {
    Rng rng = Rng::derive(seed, 0x01);
    double worst = 0.0;
    for (int k = 0; k < instances; ++k) {
        const auto inst = random_instance(rng);
        const int n = inst.x.dimension();
        const auto chain = chain_decompose(inst.x);
        const auto rho = bandit_distribution(chain, inst.gamma);

        std::vector<double> expectation(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i <= n; ++i) {
            const double f_value = inst.f(chain.chain[static_cast<std::size_t>(i)]);
            const double p = rho[static_cast<std::size_t>(i)];
            if (i == 0 || i == n) {
                const auto g = estimator(chain, rho, i, f_value, +1);
                for (int c = 0; c < n; ++c) expectation[c] += p * g[c];
            } else {
                const auto plus = estimator(chain, rho, i, f_value, +1);
                const auto minus = estimator(chain, rho, i, f_value, -1);
                for (int c = 0; c < n; ++c) {
                    expectation[c] += p * 0.5 * (plus[c] + minus[c]);
                }
            }
        }
        const auto grad = extension_subgradient(inst.f, inst.x);
        for (int c = 0; c < n; ++c) {
            worst = std::max(worst, std::abs(expectation[c] - grad[c]));
        }
    }
    std::ostringstream detail;
    detail << "max |E[estimate] - subgradient| coordinate gap = " << worst << " over "
           << instances << " instances (tolerance 1e-12)";
    return {"estimator-unbiased", worst <= 1e-12, worst, detail.str()};
}

LemmaCheck check_estimator_second_moment(std::uint64_t seed, int instances,
                                         const GradientEstimator& estimator) {
    Rng rng = Rng::derive(seed, 0x02);
    double worst_ratio = 0.0;
    for (int k = 0; k < instances; ++k) {
        const auto inst = random_instance(rng);
        const int n = inst.x.dimension();
        const auto chain = chain_decompose(inst.x);
        const auto rho = bandit_distribution(chain, inst.gamma);

        double second_moment = 0.0;
        auto norm_sq = [](const std::vector<double>& v) {
            double s = 0.0;
            for (double c : v) s += c * c;
            return s;
        };
        for (int i = 0; i <= n; ++i) {
            const double f_value = inst.f(chain.chain[static_cast<std::size_t>(i)]);
            const double p = rho[static_cast<std::size_t>(i)];
            if (i == 0 || i == n) {
                second_moment += p * norm_sq(estimator(chain, rho, i, f_value, +1));
            } else {
                second_moment += p * 0.5 * norm_sq(estimator(chain, rho, i, f_value, +1));
                second_moment += p * 0.5 * norm_sq(estimator(chain, rho, i, f_value, -1));
            }
        }
        const double m = inst.f.range_bound();
        const double bound = 16.0 * m * m * n * n / inst.gamma;
        worst_ratio = std::max(worst_ratio, second_moment / bound);
    }
    std::ostringstream detail;
    detail << "max E|estimate|^2 / (16 M^2 n^2 / gamma) = " << worst_ratio << " over "
           << instances << " instances";
    return {"estimator-second-moment", worst_ratio <= 1.0 + 1e-12, worst_ratio, detail.str()};
}

LemmaCheck check_rounding_gap(std::uint64_t seed, int instances) {
    Rng rng = Rng::derive(seed, 0x03);
    double worst_excess = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < instances; ++k) {
        const auto inst = random_instance(rng);
        const int n = inst.x.dimension();
        const auto chain = chain_decompose(inst.x);
        const auto rho = bandit_distribution(chain, inst.gamma);
        double expected_cost = 0.0;
        for (int i = 0; i <= n; ++i) {
            expected_cost += rho[static_cast<std::size_t>(i)] *
                             inst.f(chain.chain[static_cast<std::size_t>(i)]);
        }
        const double allowed = extension_value(inst.f, inst.x) +
                               2.0 * inst.gamma * inst.f.range_bound();
        worst_excess = std::max(worst_excess, expected_cost - allowed);
    }
    std::ostringstream detail;
    detail << "max E[f(S)] - (extension + 2 gamma M) = " << worst_excess << " over " << instances
           << " instances";
    return {"rounding-gap", worst_excess <= 1e-12, worst_excess, detail.str()};
}

LemmaCheck check_estimator_orthogonality(std::uint64_t seed, int simulations) {
    Rng instance_rng = Rng::derive(seed, 0x04);
    const int n = 4;
    const auto f1 = random_submodular(instance_rng, n);
    const auto f2 = random_submodular(instance_rng, n);
    const double range_bound = std::max(f1.range_bound(), f2.range_bound());

    double sum = 0.0, sum_sq = 0.0;
    for (int k = 0; k < simulations; ++k) {
        BanditLearner::Config config{
            .n = n,
            .horizon = 2,
            .range_bound = range_bound,
            .epsilon = 1.0,
            .strong_convexity = 1.0,
            .exploration = 0.5,
            .tree_norm_bound = 0.0,
            .initial_point = std::nullopt,
            .seed = Rng::derive(seed, 0x9000u + static_cast<std::uint64_t>(k)).next_u64(),
        };
        BanditLearner learner(config);

        double dot = 0.0;
        std::vector<double> alpha1;
        for (int round = 0; round < 2; ++round) {
            const SetFunction& f = (round == 0) ? f1 : f2;
            const auto before = learner.iterate();
            const HypercubePoint x(std::vector<double>(before.begin(), before.end()));
            learner.play_round([&f](Subset s) { return f(s); });
            const auto grad = extension_subgradient(f, x);
            const auto estimate = learner.last_gradient_estimate();
            std::vector<double> alpha(static_cast<std::size_t>(n));
            for (int c = 0; c < n; ++c) alpha[c] = grad[c] - estimate[c];
            if (round == 0) {
                alpha1 = std::move(alpha);
            } else {
                for (int c = 0; c < n; ++c) dot += alpha1[c] * alpha[c];
            }
        }
        sum += dot;
        sum_sq += dot * dot;
    }
    const double mean = sum / simulations;
    const double variance = std::max(0.0, sum_sq / simulations - mean * mean);
    const double se = std::sqrt(variance / simulations);
    const double sigmas = se > 0.0 ? std::abs(mean) / se : 0.0;
    std::ostringstream detail;
    detail << "mean <alpha_1, alpha_2> = " << mean << ", SE = " << se << " over " << simulations
           << " two-round simulations";
    return {"estimator-orthogonality", sigmas <= 4.0, sigmas, detail.str()};
}

bool LemmaReport::all_pass() const {
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

LemmaReport verify_lemma_suite(std::uint64_t seed) {
    LemmaReport report;
    report.checks.push_back(check_estimator_unbiased(seed, 1000, bandit_gradient_estimate));
    report.checks.push_back(check_estimator_second_moment(seed, 1000, bandit_gradient_estimate));
    report.checks.push_back(check_rounding_gap(seed, 1000));
    report.checks.push_back(check_estimator_orthogonality(seed, 100000));
    return report;
}

void write_lemma_report(std::ostream& out, const LemmaReport& report) {
    for (const auto& c : report.checks) {
        out << (c.pass ? "PASS" : "FAIL") << ' ' << c.name << "  margin=" << c.margin << "  "
            << c.detail << '\n';
    }
    out << (report.all_pass() ? "all checks passed" : "CHECKS FAILED") << '\n';
}

}  // namespace dpsubmod
