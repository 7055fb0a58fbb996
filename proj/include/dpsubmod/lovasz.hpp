#pragma once

#include <span>
#include <vector>

#include "dpsubmod/rng.hpp"
#include "dpsubmod/set_function.hpp"
#include "dpsubmod/subset.hpp"

namespace dpsubmod {

/// A point of the solid hypercube K = [0,1]^n. Construction validates the
/// box constraint; the diameter of K is sqrt(n).
class HypercubePoint {
  public:
    explicit HypercubePoint(std::vector<double> coords);

    static HypercubePoint vertex(Subset s, int n);
    static HypercubePoint constant(double c, int n);

    int dimension() const { return static_cast<int>(coords_.size()); }
    double operator[](int i) const { return coords_[i]; }
    std::span<const double> coords() const { return coords_; }

  private:
    std::vector<double> coords_;
};

double hypercube_diameter(int n);

/// Decomposition of x in [0,1]^n as a convex combination over a maximal
/// chain of subsets: x = sum_k weights[k] * indicator(chain[k]).
///
/// chain[0] = {} and chain[n] = [n]; chain[position[i]] adds element i+1 to
/// chain[position[i]-1]. `position` is the permutation pi as a 1-based rank
/// per 0-based element index; `order[k]` is the 1-based element added at
/// step k+1.
struct ChainDecomposition {
    std::vector<Subset> chain;     // n+1 nested masks
    std::vector<double> weights;   // n+1 convex weights
    std::vector<int> position;     // pi: element index (0-based) -> rank in 1..n
    std::vector<int> order;        // rank (0-based) -> 1-based element

    int n() const { return static_cast<int>(order.size()); }
};

/// Sorts coordinates in nonincreasing order (ties broken by ascending
/// element index) and returns the canonical maximal chain with convex
/// weights given by consecutive differences of the sorted values.
/// O(n log n).
ChainDecomposition chain_decompose(const HypercubePoint& x);

/// Lovasz extension value: sum over the chain of weights[k] * f(chain[k]).
double extension_value(const SetFunction& f, const HypercubePoint& x);

/// Subgradient of the Lovasz extension at x over the canonical chain:
/// g(i) = f(B_pi(i)) - f(B_pi(i)-1). Satisfies |g|_1 <= 4M.
std::vector<double> extension_subgradient(const SetFunction& f, const HypercubePoint& x);

/// Draws tau ~ U[0,1) and returns the level set {i : x(i) > tau}.
/// E[f(level set)] equals extension_value(f, x) for every set function f.
Subset sample_level_set(const HypercubePoint& x, Rng& rng);

/// Regularized extension value f(x) + (h/2)|x|^2 and its subgradient
/// g(x) + h*x. h >= 0; the value is h-strongly convex in x.
double regularized_value(const SetFunction& f, const HypercubePoint& x, double h);
std::vector<double> regularized_subgradient(const SetFunction& f, const HypercubePoint& x,
                                            double h);

}  // namespace dpsubmod
