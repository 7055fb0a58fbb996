#include "dpsubmod/tree_aggregation.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dpsubmod {

std::vector<double> sample_tree_noise(int dimension, double scale, Rng& rng) {
    if (dimension < 1) throw std::invalid_argument("sample_tree_noise: dimension must be >= 1");
    if (!(scale > 0.0)) throw std::invalid_argument("sample_tree_noise: scale must be positive");
    std::vector<double> v(static_cast<std::size_t>(dimension));
    double norm_sq = 0.0;
    do {
        norm_sq = 0.0;
        for (auto& c : v) {
            c = rng.normal();
            norm_sq += c * c;
        }
    } while (norm_sq == 0.0);
    const double radius = rng.gamma_int_shape(dimension, scale);
    const double factor = radius / std::sqrt(norm_sq);
    for (auto& c : v) c *= factor;
    return v;
}

namespace {

std::int64_t next_pow2(std::int64_t x) {
    std::int64_t p = 1;
    while (p < x) p <<= 1;
    return p;
}

}  // namespace

NoisyPrefixSumTree::NoisyPrefixSumTree(const Config& config)
    : capacity_(config.capacity),
      padded_(next_pow2(config.capacity)),
      dim_(config.dimension),
      norm_bound_(config.norm_bound),
      epsilon_(config.epsilon),
      rng_(config.seed) {
    if (capacity_ < 1) throw std::invalid_argument("NoisyPrefixSumTree: capacity must be >= 1");
    if (dim_ < 1) throw std::invalid_argument("NoisyPrefixSumTree: dimension must be >= 1");
    if (!(norm_bound_ > 0.0)) {
        throw std::invalid_argument("NoisyPrefixSumTree: norm bound must be positive");
    }
    if (std::isinf(epsilon_)) {
        noise_enabled_ = false;
        noise_scale_ = 0.0;
    } else if (epsilon_ > 0.0) {
        noise_enabled_ = true;
    } else {
        throw std::invalid_argument("NoisyPrefixSumTree: epsilon must be positive or infinite");
    }
    levels_ = std::bit_width(static_cast<std::uint64_t>(padded_));  // ceil(log2 T) + 1
    if (2 * padded_ > (std::int64_t{1} << 28) / dim_) {
        throw std::invalid_argument("NoisyPrefixSumTree: capacity * dimension too large");
    }
    if (noise_enabled_) noise_scale_ = norm_bound_ * levels_ / epsilon_;
    values_.assign(static_cast<std::size_t>(2 * padded_) * dim_, 0.0);
    noise_draws_.assign(static_cast<std::size_t>(2 * padded_), 0);
}

std::span<double> NoisyPrefixSumTree::node(std::int64_t id) {
    return {values_.data() + static_cast<std::size_t>(id) * dim_, static_cast<std::size_t>(dim_)};
}

std::vector<double> NoisyPrefixSumTree::append(std::span<const double> z) {
    if (t_ >= capacity_) throw std::runtime_error("NoisyPrefixSumTree: stream overflow");
    if (static_cast<int>(z.size()) != dim_) {
        throw std::invalid_argument("NoisyPrefixSumTree: dimension mismatch");
    }
    double norm_sq = 0.0;
    for (double c : z) norm_sq += c * c;
    if (std::sqrt(norm_sq) > norm_bound_ * (1.0 + 1e-9)) {
        throw std::domain_error(
            "NoisyPrefixSumTree: input norm exceeds the bound the noise is calibrated for");
    }

    ++t_;
    last_touched_.clear();
    // Leaf-to-root walk. A node's subtree covers a contiguous arrival range
    // [lo, hi]; it is finalized (and takes its one noise draw) when t == hi.
    std::int64_t id = padded_ + (t_ - 1);
    std::int64_t lo = t_, hi = t_;
    while (id >= 1) {
        last_touched_.push_back(id);
        auto cell = node(id);
        for (int k = 0; k < dim_; ++k) cell[k] += z[static_cast<std::size_t>(k)];
        if (noise_enabled_ && t_ == hi) {
            const auto noise = sample_tree_noise(dim_, noise_scale_, rng_);
            for (int k = 0; k < dim_; ++k) cell[k] += noise[static_cast<std::size_t>(k)];
            ++noise_draws_[static_cast<std::size_t>(id)];
            ++total_noise_draws_;
        }
        const std::int64_t width = hi - lo + 1;
        if (id & 1) lo -= width; else hi += width;  // extend to the parent's range
        id >>= 1;
    }

    // The prefix [1..t] tiles into the aligned blocks given by the binary
    // representation of t; sum the corresponding nodes.
    last_read_.clear();
    std::vector<double> v(static_cast<std::size_t>(dim_), 0.0);
    std::int64_t pos = 0;
    for (int level = levels_ - 1; level >= 0; --level) {
        const std::int64_t block = std::int64_t{1} << level;
        if (!(t_ & block)) continue;
        const std::int64_t nid = (padded_ >> level) + (pos >> level);
        last_read_.push_back(nid);
        auto cell = node(nid);
        for (int k = 0; k < dim_; ++k) v[static_cast<std::size_t>(k)] += cell[k];
        pos += block;
    }
    return v;
}

}  // namespace dpsubmod
