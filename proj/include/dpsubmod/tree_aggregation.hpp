#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dpsubmod/rng.hpp"

namespace dpsubmod {

/// Spherically symmetric noise with density proportional to
/// exp(-|v|_2 / scale) on R^d: a uniform direction on the unit sphere times
/// a Gamma(shape = d, scale) radius. For d = 1 this is the Laplace
/// distribution with the given scale.
std::vector<double> sample_tree_noise(int dimension, double scale, Rng& rng);

/// Streaming eps-differentially private prefix sums of bounded vectors.
///
/// A complete binary tree over the (power-of-two padded) stream holds in
/// each node a noisy sum of the inputs in its subtree. Every arrival updates
/// the nodes on its leaf-to-root path; a node receives its single lifetime
/// noise draw at the arrival that completes its subtree, which is exactly
/// when the update path climbs through it to the first left-child node.
/// Each prefix sum reads the at most ceil(log2 T) + 1 nodes whose subtrees
/// tile the prefix.
///
/// Every input must have L2 norm at most the configured bound; inputs that
/// exceed it are rejected, since the noise scale calibrated against the
/// bound would no longer mask them. With epsilon = infinity the tree runs
/// noise-free and is NOT private; is_private() reports which mode applies.
///
/// Single-writer: append calls must be externally serialized. Distinct
/// trees are independent.
class NoisyPrefixSumTree {
  public:
    struct Config {
        std::int64_t capacity = 0;  // max rounds T; padded to a power of two
        int dimension = 0;          // d
        double norm_bound = 0.0;    // mu, L2 bound on each input
        double epsilon = 0.0;       // privacy budget; infinity disables noise
        std::uint64_t seed = 0;
    };

    explicit NoisyPrefixSumTree(const Config& config);

    /// Consumes the next stream element and returns the noisy prefix sum
    /// over everything appended so far.
    std::vector<double> append(std::span<const double> z);

    std::int64_t rounds() const { return t_; }
    std::int64_t capacity() const { return capacity_; }
    int dimension() const { return dim_; }
    double norm_bound() const { return norm_bound_; }
    double epsilon() const { return epsilon_; }
    bool is_private() const { return noise_enabled_; }

    /// Number of tree levels: ceil(log2 T) + 1. Every arrival touches
    /// exactly this many nodes and every output reads at most this many.
    int levels() const { return levels_; }

    /// Per-node noise scale mu * levels / epsilon (0 when noise is off).
    double noise_scale() const { return noise_scale_; }

    // Instrumentation for structural accounting.
    std::span<const std::int64_t> last_touched_nodes() const { return last_touched_; }
    std::span<const std::int64_t> last_read_nodes() const { return last_read_; }
    std::span<const std::int32_t> noise_draw_counts() const { return noise_draws_; }
    std::int64_t total_noise_draws() const { return total_noise_draws_; }

  private:
    std::span<double> node(std::int64_t id);

    std::int64_t capacity_;       // declared T
    std::int64_t padded_;         // leaves, next power of two
    int dim_;
    double norm_bound_;
    double epsilon_;
    bool noise_enabled_;
    int levels_;
    double noise_scale_;
    std::int64_t t_ = 0;
    Rng rng_;
    std::vector<double> values_;            // node id (1-based heap) -> d values
    std::vector<std::int32_t> noise_draws_; // node id -> number of noise draws
    std::vector<std::int64_t> last_touched_;
    std::vector<std::int64_t> last_read_;
    std::int64_t total_noise_draws_ = 0;
};

}  // namespace dpsubmod
