#include "dpsubmod/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

#include "dpsubmod/rng.hpp"

namespace dpsubmod {

std::string to_string(AdversaryKind kind) {
    switch (kind) {
        case AdversaryKind::kStochasticFixedOptimum: return "stochastic-fixed-optimum";
        case AdversaryKind::kRandomCutStream: return "random-cut-stream";
        case AdversaryKind::kSwitching: return "switching";
        case AdversaryKind::kExplicitSequence: return "explicit-sequence";
    }
    return "unknown";
}

AdversaryKind adversary_kind_from_string(const std::string& name) {
    if (name == "stochastic-fixed-optimum") return AdversaryKind::kStochasticFixedOptimum;
    if (name == "random-cut-stream") return AdversaryKind::kRandomCutStream;
    if (name == "switching") return AdversaryKind::kSwitching;
    if (name == "explicit-sequence") return AdversaryKind::kExplicitSequence;
    throw std::invalid_argument("unknown adversary kind '" + name + "'");
}

namespace {

std::vector<WeightedEdge> all_pairs(int n) {
    std::vector<WeightedEdge> edges;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) edges.push_back({i, j, 0.0});
    }
    return edges;
}

/// Modular pull toward the planted optimum plus a random cut. The modular
/// part takes 80% of the range budget and dominates the cut's 20%, so the
/// expected per-round minimizer stays at the planted set with a margin of
/// at least 0.48 * M / n per flipped element.
SetFunction planted_round_function(int n, double range_bound, Subset planted, Rng& rng) {
    const double modular_share = 0.8 * range_bound / n;
    std::vector<double> weights(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const double magnitude = modular_share * rng.uniform(0.7, 1.0);
        weights[static_cast<std::size_t>(i - 1)] = contains(planted, i) ? -magnitude : magnitude;
    }
    auto edges = all_pairs(n);
    const double cut_share = 0.2 * range_bound / static_cast<double>(edges.size());
    for (auto& e : edges) e.weight = cut_share * rng.uniform01();

    auto modular = std::make_shared<std::vector<double>>(std::move(weights));
    auto cut_edges = std::make_shared<std::vector<WeightedEdge>>(std::move(edges));
    return SetFunction(n, range_bound, [modular, cut_edges, n](Subset s) {
        double value = 0.0;
        for (int i = 1; i <= n; ++i) {
            if (contains(s, i)) value += (*modular)[static_cast<std::size_t>(i - 1)];
        }
        for (const auto& e : *cut_edges) {
            if (contains(s, e.u) != contains(s, e.v)) value += e.weight;
        }
        return value;
    });
}

SetFunction random_cut(int n, double range_bound, Rng& rng) {
    auto edges = all_pairs(n);
    double total = 0.0;
    for (auto& e : edges) {
        e.weight = rng.uniform01();
        total += e.weight;
    }
    const double scale = range_bound / total;
    for (auto& e : edges) e.weight *= scale;  // cut bound = sum of weights = M
    return make_cut_function(n, edges);
}

}  // namespace

Adversary::Adversary(AdversaryConfig config) : config_(std::move(config)) {
    require_ground_size(config_.n);
    if (!(config_.range_bound > 0.0)) {
        throw std::invalid_argument("adversary: range bound must be positive");
    }
    if (config_.kind == AdversaryKind::kStochasticFixedOptimum ||
        config_.kind == AdversaryKind::kSwitching) {
        planted_ = config_.planted_set;
        if (planted_ == 0) {
            // streams below 2^32 are reserved for per-round functions
            Rng rng = Rng::derive(config_.seed, (1ull << 32) + 1);
            // a nonempty proper subset keeps the planted optimum informative
            planted_ = config_.n == 1
                           ? 1
                           : static_cast<Subset>(rng.uniform_int(
                                 1, static_cast<std::int64_t>(full_set(config_.n)) - 1));
        }
        if ((planted_ & ~full_set(config_.n)) != 0) {
            throw std::invalid_argument("adversary: planted set outside the ground set");
        }
    }
    if (config_.kind == AdversaryKind::kSwitching) {
        if (config_.switch_period < 1) {
            throw std::invalid_argument("adversary: switch period must be >= 1");
        }
        Rng rng_a = Rng::derive(config_.seed, (1ull << 32) + 2);
        Rng rng_b = Rng::derive(config_.seed, (1ull << 32) + 3);
        bank_.push_back(planted_round_function(config_.n, config_.range_bound, planted_, rng_a));
        bank_.push_back(planted_round_function(config_.n, config_.range_bound,
                                               full_set(config_.n) & ~planted_, rng_b));
    }
    if (config_.kind == AdversaryKind::kExplicitSequence) {
        if (config_.sequence.empty()) {
            throw std::invalid_argument("adversary: explicit sequence is empty");
        }
        double max_bound = 0.0;
        for (const auto& f : config_.sequence) {
            if (f.ground_size() != config_.n) {
                throw std::invalid_argument("adversary: sequence functions must share n");
            }
            max_bound = std::max(max_bound, f.range_bound());
        }
        config_.range_bound = std::max(config_.range_bound, max_bound);
    }
}

SetFunction Adversary::function_at(std::int64_t t) const {
    if (t < 1) throw std::invalid_argument("adversary: rounds are 1-based");
    switch (config_.kind) {
        case AdversaryKind::kStochasticFixedOptimum: {
            Rng rng = Rng::derive(config_.seed, static_cast<std::uint64_t>(t));
            return planted_round_function(config_.n, config_.range_bound, planted_, rng);
        }
        case AdversaryKind::kRandomCutStream: {
            Rng rng = Rng::derive(config_.seed, static_cast<std::uint64_t>(t));
            return random_cut(config_.n, config_.range_bound, rng);
        }
        case AdversaryKind::kSwitching: {
            const auto phase = ((t - 1) / config_.switch_period) % 2;
            return bank_[static_cast<std::size_t>(phase)];
        }
        case AdversaryKind::kExplicitSequence: {
            const auto idx = static_cast<std::size_t>((t - 1) %
                             static_cast<std::int64_t>(config_.sequence.size()));
            return config_.sequence[idx];
        }
    }
    throw std::logic_error("adversary: unreachable");
}

}  // namespace dpsubmod
