#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "dpsubmod/learners.hpp"
#include "dpsubmod/lovasz.hpp"

namespace dpsubmod {

/// Pluggable estimator signature, so tests can inject a corrupted estimator
/// and watch the corresponding check fail.
using GradientEstimator = std::function<std::vector<double>(
    const ChainDecomposition&, std::span<const double> rho, int index, double f_value, int xi)>;

struct LemmaCheck {
    std::string name;
    bool pass = false;
    double margin = 0.0;  // distance from the failure boundary; semantics per check
    std::string detail;
};

/// Exact expectation of the one-point estimator over its <= 2n+2 outcomes
/// equals the chain subgradient coordinatewise (tolerance 1e-12), over
/// `instances` random (function, point, exploration) triples.
LemmaCheck check_estimator_unbiased(std::uint64_t seed, int instances,
                                    const GradientEstimator& estimator);

/// Exact second moment of the estimator is at most 16 M^2 n^2 / gamma.
LemmaCheck check_estimator_second_moment(std::uint64_t seed, int instances,
                                         const GradientEstimator& estimator);

/// Exact expected cost of the sampled set exceeds the extension value by at
/// most 2 * gamma * M.
LemmaCheck check_rounding_gap(std::uint64_t seed, int instances);

/// Empirical mean of <alpha_1, alpha_2> over two-round bandit simulations is
/// within 4 standard errors of 0, where alpha_t is the estimator error
/// grad(x_t) - g_hat_t.
LemmaCheck check_estimator_orthogonality(std::uint64_t seed, int simulations);

struct LemmaReport {
    std::vector<LemmaCheck> checks;
    bool all_pass() const;
};

/// Runs the four checks against the production estimator with the standard
/// instance counts.
LemmaReport verify_lemma_suite(std::uint64_t seed);

void write_lemma_report(std::ostream& out, const LemmaReport& report);

}  // namespace dpsubmod
