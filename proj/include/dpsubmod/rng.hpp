#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

namespace dpsubmod {

/// Deterministic random stream. All distributions are implemented on top of
/// the raw mt19937_64 output so that a given seed produces the same sequence
/// of draws regardless of the standard library's distribution internals.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Derives an independent stream from (seed, stream id). Used to give
    /// trials, adversaries, and trees their own reproducible streams.
    static Rng derive(std::uint64_t seed, std::uint64_t stream) {
        return Rng(splitmix64(seed ^ splitmix64(stream + 0x9e3779b97f4a7c15ull)));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [lo, hi], inclusive. Rejection sampling keeps the
    /// draw unbiased and the stream deterministic.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(engine_());  // full range
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t draw;
        do {
            draw = engine_();
        } while (draw >= limit);
        return lo + static_cast<std::int64_t>(draw % span);
    }

    /// Uniform sign in {+1, -1}.
    int sign() { return (engine_() & 1u) ? +1 : -1; }

    /// Standard normal via the Marsaglia polar method.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    /// Exponential with the given scale (mean = scale).
    double exponential(double scale) {
        return -scale * std::log1p(-uniform01());
    }

    /// Gamma(shape = k, scale) for integer k >= 1, as a sum of exponentials.
    double gamma_int_shape(int shape, double scale) {
        if (shape < 1) throw std::invalid_argument("gamma_int_shape: shape must be >= 1");
        double sum = 0.0;
        for (int i = 0; i < shape; ++i) sum += exponential(scale);
        return sum;
    }

    /// Draws an index from an (approximately normalized) probability vector.
    int sample_discrete(std::span<const double> probs) {
        if (probs.empty()) throw std::invalid_argument("sample_discrete: empty distribution");
        const double u = uniform01();
        double cum = 0.0;
        for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
            cum += probs[i];
            if (u < cum) return static_cast<int>(i);
        }
        return static_cast<int>(probs.size()) - 1;
    }

  private:
    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace dpsubmod
