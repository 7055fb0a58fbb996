#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dpsubmod/subset.hpp"

namespace dpsubmod {

/// Oracle for a set function f : 2^[n] -> [-M, M].
///
/// The oracle is immutable after construction and must be deterministic:
/// repeated evaluation on the same mask returns bit-identical values. Safe to
/// evaluate concurrently from any number of threads.
class SetFunction {
  public:
    using Oracle = std::function<double(Subset)>;

    SetFunction(int n, double range_bound, Oracle oracle);

    int ground_size() const { return n_; }
    double range_bound() const { return range_bound_; }

    /// Evaluates f(S). Rejects masks with bits >= n set.
    double operator()(Subset s) const;

  private:
    int n_;
    double range_bound_;
    Oracle oracle_;
};

/// Witness of a submodularity violation: f(S+i) + f(S+j) < f(S+i+j) + f(S).
struct SubmodularityWitness {
    Subset base;
    int element_i;
    int element_j;
    double violation;  // f(S+i+j) + f(S) - f(S+i) - f(S+j), positive
};

struct SubmodularityCheck {
    bool submodular = true;
    std::optional<SubmodularityWitness> witness;
};

/// Exhaustively checks the pairwise submodularity condition
///   f(S u {i}) + f(S u {j}) >= f(S u {i,j}) + f(S)
/// for all S and i < j not in S. Refuses n > 16: the oracle is too large for
/// exhaustive verification. Cost O(2^n n^2).
SubmodularityCheck check_submodular(const SetFunction& f);

/// Exhaustively checks |f(S)| <= declared bound for all S (n <= 16).
/// Returns the first offending mask, if any.
std::optional<Subset> check_range_bound(const SetFunction& f);

struct WeightedEdge {
    int u;  // 1-based, u < v
    int v;
    double weight;  // nonnegative
};

/// Graph cut: f(S) = total weight of edges with exactly one endpoint in S.
/// Declared bound M = sum of all edge weights. Submodular by construction.
SetFunction make_cut_function(int n, const std::vector<WeightedEdge>& edges);

/// Weighted coverage: f(S) = sign * |union of the element sets picked by S|.
/// Element sets are given as masks over a universe of at most 64 items.
/// The positive sign is submodular for any element sets; the negated variant
/// is submodular only when the element sets are pairwise disjoint.
SetFunction make_coverage_function(int n, const std::vector<std::uint64_t>& element_sets,
                                   int sign);

/// Modular: f(S) = sum of weights over S. Declared bound is the tightest one,
/// max(sum of positive weights, -sum of negative weights).
SetFunction make_modular_function(const std::vector<double>& weights);

/// Explicit table of all 2^n values (n <= 12).
SetFunction make_table_function(int n, std::vector<double> values,
                                std::optional<double> range_bound = std::nullopt);

}  // namespace dpsubmod
