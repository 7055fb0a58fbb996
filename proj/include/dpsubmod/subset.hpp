#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dpsubmod {

/// A subset of the ground set {1..n}, stored as an n-bit mask.
/// Element i (1-based) corresponds to bit i-1.
using Subset = std::uint32_t;

// Hard cap on the ground-set size for which masks (and every exhaustive
// tool built on them) are usable.
inline constexpr int kMaxGroundSize = 20;

inline Subset full_set(int n) {
    return (n >= 32) ? ~Subset{0} : ((Subset{1} << n) - 1);
}

inline bool contains(Subset s, int element_1based) {
    return (s >> (element_1based - 1)) & 1u;
}

inline Subset with_element(Subset s, int element_1based) {
    return s | (Subset{1} << (element_1based - 1));
}

inline int set_size(Subset s) {
    return std::popcount(s);
}

inline void require_ground_size(int n) {
    if (n < 1 || n > kMaxGroundSize) {
        throw std::invalid_argument("ground-set size must be in [1, " +
                                    std::to_string(kMaxGroundSize) + "], got " +
                                    std::to_string(n));
    }
}

/// Renders a mask as "{1,3,4}" (1-based elements), "{}" for the empty set.
std::string subset_to_string(Subset s, int n);

}  // namespace dpsubmod
