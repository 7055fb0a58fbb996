#include "dpsubmod/set_function.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

namespace dpsubmod {

std::string subset_to_string(Subset s, int n) {
    std::string out = "{";
    bool first = true;
    for (int i = 1; i <= n; ++i) {
        if (!contains(s, i)) continue;
        if (!first) out += ',';
        out += std::to_string(i);
        first = false;
    }
    out += '}';
    return out;
}

SetFunction::SetFunction(int n, double range_bound, Oracle oracle)
    : n_(n), range_bound_(range_bound), oracle_(std::move(oracle)) {
    require_ground_size(n);
    if (!(range_bound_ > 0.0) || !std::isfinite(range_bound_)) {
        throw std::invalid_argument("SetFunction: range bound must be positive and finite");
    }
    if (!oracle_) throw std::invalid_argument("SetFunction: null oracle");
}

double SetFunction::operator()(Subset s) const {
    if ((s & ~full_set(n_)) != 0) {
        throw std::invalid_argument("SetFunction: mask has bits outside the ground set");
    }
    return oracle_(s);
}

SubmodularityCheck check_submodular(const SetFunction& f) {
    const int n = f.ground_size();
    if (n > 16) {
        throw std::invalid_argument(
            "check_submodular: oracle too large for exhaustive verification (n > 16)");
    }
    const Subset all = full_set(n);
    for (Subset s = 0; s <= all; ++s) {
        for (int i = 1; i <= n; ++i) {
            if (contains(s, i)) continue;
            for (int j = i + 1; j <= n; ++j) {
                if (contains(s, j)) continue;
                const Subset si = with_element(s, i);
                const Subset sj = with_element(s, j);
                const Subset sij = with_element(si, j);
                const double lhs = f(si) + f(sj);
                const double rhs = f(sij) + f(s);
                if (lhs < rhs - 1e-12) {
                    return SubmodularityCheck{
                        false, SubmodularityWitness{s, i, j, rhs - lhs}};
                }
            }
        }
        if (s == all) break;  // Subset is unsigned; avoid wraparound
    }
    return SubmodularityCheck{};
}

std::optional<Subset> check_range_bound(const SetFunction& f) {
    const int n = f.ground_size();
    if (n > 16) {
        throw std::invalid_argument(
            "check_range_bound: oracle too large for exhaustive verification (n > 16)");
    }
    const Subset all = full_set(n);
    for (Subset s = 0; s <= all; ++s) {
        if (std::abs(f(s)) > f.range_bound()) return s;
        if (s == all) break;
    }
    return std::nullopt;
}

SetFunction make_cut_function(int n, const std::vector<WeightedEdge>& edges) {
    require_ground_size(n);
    double total = 0.0;
    for (const auto& e : edges) {
        if (e.u < 1 || e.v <= e.u || e.v > n) {
            throw std::invalid_argument("make_cut_function: edge endpoints must satisfy 1 <= u < v <= n");
        }
        if (e.weight < 0.0) {
            throw std::invalid_argument("make_cut_function: negative edge weight");
        }
        total += e.weight;
    }
    if (total <= 0.0) total = 1.0;  // degenerate edgeless graph still needs a valid bound
    auto local = edges;
    return SetFunction(n, total, [local](Subset s) {
        double cut = 0.0;
        for (const auto& e : local) {
            if (contains(s, e.u) != contains(s, e.v)) cut += e.weight;
        }
        return cut;
    });
}

SetFunction make_coverage_function(int n, const std::vector<std::uint64_t>& element_sets,
                                   int sign) {
    require_ground_size(n);
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("make_coverage_function: sign must be +1 or -1");
    }
    if (static_cast<int>(element_sets.size()) != n) {
        throw std::invalid_argument("make_coverage_function: need one element set per ground element");
    }
    std::uint64_t universe = 0;
    for (std::uint64_t u : element_sets) universe |= u;
    const double bound = universe ? static_cast<double>(std::popcount(universe)) : 1.0;
    auto sets = element_sets;
    return SetFunction(n, bound, [sets, sign, n](Subset s) {
        std::uint64_t covered = 0;
        for (int i = 1; i <= n; ++i) {
            if (contains(s, i)) covered |= sets[i - 1];
        }
        return sign * static_cast<double>(std::popcount(covered));
    });
}

SetFunction make_modular_function(const std::vector<double>& weights) {
    const int n = static_cast<int>(weights.size());
    require_ground_size(n);
    double pos = 0.0, neg = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w)) throw std::invalid_argument("make_modular_function: non-finite weight");
        if (w > 0) pos += w; else neg -= w;
    }
    double bound = std::max(pos, neg);
    if (bound <= 0.0) bound = 1.0;
    auto local = weights;
    return SetFunction(n, bound, [local, n](Subset s) {
        double sum = 0.0;
        for (int i = 1; i <= n; ++i) {
            if (contains(s, i)) sum += local[i - 1];
        }
        return sum;
    });
}

SetFunction make_table_function(int n, std::vector<double> values,
                                std::optional<double> range_bound) {
    require_ground_size(n);
    if (n > 12) {
        throw std::invalid_argument("make_table_function: explicit tables support n <= 12");
    }
    if (values.size() != (std::size_t{1} << n)) {
        throw std::invalid_argument("make_table_function: need exactly 2^n values");
    }
    double max_abs = 0.0;
    for (double v : values) max_abs = std::max(max_abs, std::abs(v));
    double bound = range_bound.value_or(max_abs > 0 ? max_abs : 1.0);
    if (max_abs > bound) {
        throw std::invalid_argument("make_table_function: table value exceeds the declared bound");
    }
    auto table = std::make_shared<std::vector<double>>(std::move(values));
    return SetFunction(n, bound, [table](Subset s) { return (*table)[s]; });
}

}  // namespace dpsubmod
