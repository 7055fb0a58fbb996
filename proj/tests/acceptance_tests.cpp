// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Thresholds and instance counts are pinned in code; seeds are
// fixed so the run is reproducible.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "dpsubmod/harness.hpp"
#include "dpsubmod/learners.hpp"
#include "dpsubmod/lemma_checks.hpp"
#include "dpsubmod/lovasz.hpp"
#include "dpsubmod/rng.hpp"
#include "dpsubmod/set_function.hpp"
#include "dpsubmod/tree_aggregation.hpp"

using namespace dpsubmod;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
    bool pass = true;
    std::string detail;
};

SetFunction random_fixture(Rng& rng, int n) {
    switch (rng.uniform_int(0, 2)) {
        case 0: {
            std::vector<WeightedEdge> edges;
            for (int i = 1; i <= n; ++i) {
                for (int j = i + 1; j <= n; ++j) {
                    if (rng.uniform01() < 0.6) edges.push_back({i, j, rng.uniform(0.1, 1.0)});
                }
            }
            if (edges.empty()) edges.push_back({1, 2, 1.0});
            return make_cut_function(n, edges);
        }
        case 1: {
            std::vector<std::uint64_t> sets(static_cast<std::size_t>(n));
            for (auto& s : sets) s = rng.next_u64() & 0xff;
            for (auto& s : sets) {
                if (s == 0) s = 1;
            }
            return make_coverage_function(n, sets, +1);
        }
        default: {
            std::vector<double> w(static_cast<std::size_t>(n));
            for (auto& c : w) c = rng.uniform(-1.0, 1.0);
            return make_modular_function(w);
        }
    }
}

HypercubePoint random_point(Rng& rng, int n) {
    std::vector<double> c(static_cast<std::size_t>(n));
    for (auto& v : c) v = rng.uniform01();
    return HypercubePoint(std::move(c));
}

// --- criterion 1: Lovasz extension correctness -----------------------------

Outcome criterion_lovasz() {
    Rng rng(101);
    std::ostringstream detail;

    // vertex agreement, exact, 50 fixtures with n <= 10
    for (int k = 0; k < 50; ++k) {
        const int n = static_cast<int>(rng.uniform_int(2, 10));
        const auto f = random_fixture(rng, n);
        for (Subset s = 0; s <= full_set(n); ++s) {
            if (extension_value(f, HypercubePoint::vertex(s, n)) != f(s)) {
                return {false, "vertex agreement broken at n=" + std::to_string(n)};
            }
        }
    }

    // level-set Monte Carlo within 4 SE at 1e5 samples
    for (int k = 0; k < 5; ++k) {
        const int n = static_cast<int>(rng.uniform_int(2, 8));
        const auto f = random_fixture(rng, n);
        const auto x = random_point(rng, n);
        const double exact = extension_value(f, x);
        const int samples = 100000;
        double sum = 0.0, sum_sq = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double v = f(sample_level_set(x, rng));
            sum += v;
            sum_sq += v * v;
        }
        const double mean = sum / samples;
        const double se = std::sqrt(std::max(0.0, sum_sq / samples - mean * mean) / samples);
        if (std::abs(mean - exact) > 4.0 * se + 1e-12) {
            return {false, "level-set mean off by " + std::to_string(std::abs(mean - exact)) +
                               " (4 SE = " + std::to_string(4 * se) + ")"};
        }
    }

    // subgradient inequality on 1e4 random pairs, and the L1 norm bound
    double worst_gap = 0.0, worst_norm_ratio = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const int n = static_cast<int>(rng.uniform_int(2, 8));
        const auto f = random_fixture(rng, n);
        const auto x = random_point(rng, n);
        const auto y = random_point(rng, n);
        const auto g = extension_subgradient(f, x);
        double inner = 0.0, l1 = 0.0;
        for (int i = 0; i < n; ++i) {
            inner += g[static_cast<std::size_t>(i)] * (y[i] - x[i]);
            l1 += std::abs(g[static_cast<std::size_t>(i)]);
        }
        worst_gap = std::max(worst_gap,
                             extension_value(f, x) + inner - extension_value(f, y));
        worst_norm_ratio = std::max(worst_norm_ratio, l1 / (4.0 * f.range_bound()));
    }
    if (worst_gap > 1e-9) return {false, "subgradient inequality violated by " + std::to_string(worst_gap)};
    if (worst_norm_ratio > 1.0) return {false, "L1 norm bound exceeded"};

    detail << "vertex agreement exact on 50 fixtures; MC within 4 SE; "
           << "max subgradient-inequality violation " << worst_gap << "; max |g|_1 / 4M "
           << worst_norm_ratio;
    return {true, detail.str()};
}

// --- criterion 2: estimator lemmas as arithmetic ----------------------------

Outcome criterion_estimator_lemmas() {
    const auto unbiased = check_estimator_unbiased(202, 1000, bandit_gradient_estimate);
    const auto second = check_estimator_second_moment(202, 1000, bandit_gradient_estimate);
    const auto rounding = check_rounding_gap(202, 1000);
    std::ostringstream detail;
    detail << "unbiasedness gap " << unbiased.margin << " (tol 1e-12); second-moment ratio "
           << second.margin << " (<= 1); rounding excess " << rounding.margin << " (<= 0)";
    return {unbiased.pass && second.pass && rounding.pass, detail.str()};
}

// --- criterion 3: ftal_argmin oracle equivalence ----------------------------

Outcome criterion_argmin() {
    Rng rng(303);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const int n = static_cast<int>(rng.uniform_int(1, 6));
        const auto t = rng.uniform_int(1, 64);
        const double h = rng.uniform(0.05, 4.0);
        std::vector<double> v(static_cast<std::size_t>(n)), sum_x(static_cast<std::size_t>(n));
        for (auto& c : v) c = rng.uniform(-8.0, 8.0);
        for (auto& c : sum_x) c = rng.uniform(0.0, static_cast<double>(t));
        const auto closed = ftal_argmin(v, sum_x, t, h);
        for (int i = 0; i < n; ++i) {
            // independent route: golden-section search on the coordinate objective
            auto objective = [&](double c) {
                return v[static_cast<std::size_t>(i)] * c +
                       0.5 * h * (t * c * c - 2.0 * sum_x[static_cast<std::size_t>(i)] * c);
            };
            double lo = 0.0, hi = 1.0;
            const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
            double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
            for (int it = 0; it < 80; ++it) {
                if (objective(a) < objective(b)) {
                    hi = b;
                    b = a;
                    a = hi - phi * (hi - lo);
                } else {
                    lo = a;
                    a = b;
                    b = lo + phi * (hi - lo);
                }
            }
            worst = std::max(worst,
                             std::abs(closed[static_cast<std::size_t>(i)] - 0.5 * (lo + hi)));
        }
    }
    std::ostringstream detail;
    detail << "max |closed form - golden section| = " << worst << " (tol 1e-6)";
    return {worst <= 1e-6, detail.str()};
}

// --- criterion 4: aggregation tree ------------------------------------------

Outcome criterion_tree() {
    Rng rng(404);

    // noise-disabled prefix sums, bit-exact, 1000 random streams of dyadic
    // inputs (every partial sum exactly representable)
    for (int trial = 0; trial < 1000; ++trial) {
        const auto capacity = rng.uniform_int(1, 64);
        const int d = static_cast<int>(rng.uniform_int(1, 8));
        NoisyPrefixSumTree tree(NoisyPrefixSumTree::Config{
            .capacity = capacity, .dimension = d, .norm_bound = 10.0, .epsilon = kInf,
            .seed = 1});
        std::vector<double> truth(static_cast<std::size_t>(d), 0.0);
        for (std::int64_t t = 0; t < capacity; ++t) {
            std::vector<double> z(static_cast<std::size_t>(d));
            for (auto& c : z) c = static_cast<double>(rng.uniform_int(-4096, 4096)) / 4096.0;
            for (int k = 0; k < d; ++k) {
                truth[static_cast<std::size_t>(k)] += z[static_cast<std::size_t>(k)];
            }
            if (tree.append(z) != truth) {
                return {false, "noise-free prefix sum not bit-exact"};
            }
        }
    }

    // structural accounting at T in {8, 64, 1024}
    for (const std::int64_t capacity :
         {std::int64_t{8}, std::int64_t{64}, std::int64_t{1024}}) {
        NoisyPrefixSumTree tree(NoisyPrefixSumTree::Config{
            .capacity = capacity, .dimension = 3, .norm_bound = 1.0, .epsilon = 1.0, .seed = 5});
        const int levels = tree.levels();
        for (std::int64_t t = 1; t <= capacity; ++t) {
            tree.append(std::vector<double>{0.5, 0.0, -0.5});
            if (static_cast<int>(tree.last_touched_nodes().size()) != levels) {
                return {false, "arrival touched " +
                                   std::to_string(tree.last_touched_nodes().size()) +
                                   " nodes, expected " + std::to_string(levels)};
            }
            if (static_cast<int>(tree.last_read_nodes().size()) > levels) {
                return {false, "output read more than levels nodes"};
            }
        }
        for (std::size_t id = 1; id < tree.noise_draw_counts().size(); ++id) {
            if (tree.noise_draw_counts()[id] != 1) {
                return {false, "node " + std::to_string(id) + " holds " +
                                   std::to_string(tree.noise_draw_counts()[id]) +
                                   " noise draws, expected exactly 1"};
            }
        }
    }

    // accuracy: d=4, mu=1, eps=1, T=1024, 200 trials
    const int d = 4;
    const std::int64_t capacity = 1024;
    const int trials = 200;
    std::vector<double> error_sum(static_cast<std::size_t>(capacity), 0.0);
    for (int trial = 0; trial < trials; ++trial) {
        NoisyPrefixSumTree tree(NoisyPrefixSumTree::Config{
            .capacity = capacity, .dimension = d, .norm_bound = 1.0, .epsilon = 1.0,
            .seed = static_cast<std::uint64_t>(trial)});
        Rng stream_rng(static_cast<std::uint64_t>(trial) + 12345);
        std::vector<double> truth(d, 0.0);
        for (std::int64_t t = 0; t < capacity; ++t) {
            std::vector<double> z(d);
            double norm_sq = 0.0;
            for (auto& c : z) {
                c = stream_rng.uniform(-1.0, 1.0);
                norm_sq += c * c;
            }
            const double norm = std::sqrt(norm_sq);
            if (norm > 1.0) {
                for (auto& c : z) c /= norm;
            }
            for (int k = 0; k < d; ++k) truth[static_cast<std::size_t>(k)] += z[static_cast<std::size_t>(k)];
            const auto v = tree.append(z);
            double err_sq = 0.0;
            for (int k = 0; k < d; ++k) {
                const double e = v[static_cast<std::size_t>(k)] - truth[static_cast<std::size_t>(k)];
                err_sq += e * e;
            }
            error_sum[static_cast<std::size_t>(t)] += std::sqrt(err_sq);
        }
    }
    const int levels = 11;  // ceil(log2 1024) + 1
    const double bound = 2.0 * levels * (d * 1.0 * levels / 1.0);
    double worst_mean = 0.0;
    for (double e : error_sum) worst_mean = std::max(worst_mean, e / trials);
    if (worst_mean > bound) {
        return {false, "mean output error " + std::to_string(worst_mean) + " exceeds " +
                           std::to_string(bound)};
    }
    return {true, "exact sums bit-exact; accounting holds at T=8,64,1024; max mean error " +
                      std::to_string(worst_mean) + " <= " + std::to_string(bound)};
}

// --- criteria 5/6: regret exponents ------------------------------------------

ExperimentSpec regret_spec(LearnerAlgorithm algorithm) {
    ExperimentSpec spec;
    spec.algorithm = algorithm;
    spec.adversary.kind = AdversaryKind::kStochasticFixedOptimum;
    spec.adversary.n = 4;
    spec.adversary.range_bound = 1.0;
    spec.epsilon = 1.0;
    spec.trials = 20;
    spec.seed = 7;
    return spec;
}

Outcome criterion_full_info_regret() {
    auto spec = regret_spec(LearnerAlgorithm::kFullInfo);
    spec.horizons = {256, 1024, 4096, 16384};
    const auto result = run_experiment(spec);
    if (!result.slope.defined) return {false, "slope undefined: " + result.slope.note};

    bool ratio_decreasing = true;
    std::ostringstream detail;
    detail << "slope " << result.slope.slope << " (<= 0.65); regret/T:";
    double previous = kInf;
    for (const auto& hr : result.horizons) {
        const double ratio = hr.mean_regret / static_cast<double>(hr.horizon);
        detail << ' ' << ratio;
        ratio_decreasing &= ratio < previous;
        previous = ratio;
    }
    return {result.slope.slope <= 0.65 && ratio_decreasing, detail.str()};
}

Outcome criterion_bandit_regret() {
    auto spec = regret_spec(LearnerAlgorithm::kBandit);
    spec.horizons = {1024, 4096, 16384, 65536};
    const auto result = run_experiment(spec);
    if (!result.slope.defined) return {false, "slope undefined: " + result.slope.note};

    bool ratio_decreasing = true, queries_exact = true;
    std::ostringstream detail;
    detail << "slope " << result.slope.slope << " (<= 0.9); regret/T:";
    double previous = kInf;
    for (const auto& hr : result.horizons) {
        const double ratio = hr.mean_regret / static_cast<double>(hr.horizon);
        detail << ' ' << ratio;
        ratio_decreasing &= ratio < previous;
        previous = ratio;
        for (const auto& trace : hr.traces) {
            queries_exact &= trace.oracle_queries == hr.horizon;
        }
    }
    detail << "; single-query discipline " << (queries_exact ? "exact" : "VIOLATED");
    return {result.slope.slope <= 0.9 && ratio_decreasing && queries_exact, detail.str()};
}

// --- criterion 7: privacy-plumbing monotonicity ------------------------------

Outcome criterion_privacy_monotonicity() {
    auto spec = regret_spec(LearnerAlgorithm::kFullInfo);
    spec.horizons = {4096};
    auto mean_at = [&spec](double epsilon) {
        spec.epsilon = epsilon;
        return run_experiment(spec).horizons[0].mean_regret;
    };
    const double tight = mean_at(0.1);
    const double loose = mean_at(1.0);
    const double free_run = mean_at(kInf);
    int inversions = 0;
    if (!(tight >= loose)) ++inversions;
    if (!(loose >= free_run)) ++inversions;
    if (!(tight >= free_run)) ++inversions;
    std::ostringstream detail;
    detail << "mean regret: eps=0.1 -> " << tight << ", eps=1 -> " << loose << ", eps=inf -> "
           << free_run << "; inversions " << inversions << "/3 (allow 1)";
    return {inversions <= 1, detail.str()};
}

// --- criterion 8: estimator orthogonality ------------------------------------

Outcome criterion_orthogonality() {
    const auto check = check_estimator_orthogonality(808, 100000);
    return {check.pass, check.detail + " (|mean| <= 4 SE)"};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"1 lovasz-correctness", criterion_lovasz},
        {"2 estimator-lemmas", criterion_estimator_lemmas},
        {"3 ftal-argmin-oracle", criterion_argmin},
        {"4 aggregation-tree", criterion_tree},
        {"5 full-info-regret-exponent", criterion_full_info_regret},
        {"6 bandit-regret-exponent", criterion_bandit_regret},
        {"7 privacy-monotonicity", criterion_privacy_monotonicity},
        {"8 estimator-orthogonality", criterion_orthogonality},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        const Outcome outcome = criterion.run();
        const auto seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!outcome.pass) ++failures;
        std::printf("[%s] criterion %s (%.1fs): %s\n", outcome.pass ? "PASS" : "FAIL",
                    criterion.name, seconds, outcome.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
