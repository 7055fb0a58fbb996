#include "dpsubmod/lovasz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dpsubmod {

HypercubePoint::HypercubePoint(std::vector<double> coords) : coords_(std::move(coords)) {
    require_ground_size(static_cast<int>(coords_.size()));
    for (double c : coords_) {
        if (!(c >= 0.0 && c <= 1.0)) {  // also rejects NaN
            throw std::invalid_argument("HypercubePoint: coordinate outside [0,1]");
        }
    }
}

HypercubePoint HypercubePoint::vertex(Subset s, int n) {
    require_ground_size(n);
    std::vector<double> c(static_cast<std::size_t>(n), 0.0);
    for (int i = 1; i <= n; ++i) {
        if (contains(s, i)) c[i - 1] = 1.0;
    }
    return HypercubePoint(std::move(c));
}

HypercubePoint HypercubePoint::constant(double value, int n) {
    require_ground_size(n);
    return HypercubePoint(std::vector<double>(static_cast<std::size_t>(n), value));
}

double hypercube_diameter(int n) { return std::sqrt(static_cast<double>(n)); }

ChainDecomposition chain_decompose(const HypercubePoint& x) {
    const int n = x.dimension();
    ChainDecomposition d;
    d.order.resize(static_cast<std::size_t>(n));
    std::iota(d.order.begin(), d.order.end(), 1);
    std::stable_sort(d.order.begin(), d.order.end(),
                     [&x](int a, int b) { return x[a - 1] > x[b - 1]; });

    d.position.resize(static_cast<std::size_t>(n));
    d.chain.resize(static_cast<std::size_t>(n) + 1);
    d.weights.resize(static_cast<std::size_t>(n) + 1);

    d.chain[0] = 0;
    double prev = 1.0;
    Subset running = 0;
    for (int k = 0; k < n; ++k) {
        const int elem = d.order[static_cast<std::size_t>(k)];
        d.position[elem - 1] = k + 1;
        running = with_element(running, elem);
        d.chain[static_cast<std::size_t>(k) + 1] = running;
        const double cur = x[elem - 1];
        d.weights[static_cast<std::size_t>(k)] = prev - cur;
        prev = cur;
    }
    d.weights[static_cast<std::size_t>(n)] = prev;  // min coordinate
    return d;
}

double extension_value(const SetFunction& f, const HypercubePoint& x) {
    if (f.ground_size() != x.dimension()) {
        throw std::invalid_argument("extension_value: dimension mismatch");
    }
    const auto d = chain_decompose(x);
    double value = 0.0;
    for (std::size_t k = 0; k < d.chain.size(); ++k) {
        value += d.weights[k] * f(d.chain[k]);
    }
    return value;
}

std::vector<double> extension_subgradient(const SetFunction& f, const HypercubePoint& x) {
    if (f.ground_size() != x.dimension()) {
        throw std::invalid_argument("extension_subgradient: dimension mismatch");
    }
    const auto d = chain_decompose(x);
    const int n = x.dimension();
    std::vector<double> g(static_cast<std::size_t>(n));
    double prev = f(d.chain[0]);
    for (int k = 1; k <= n; ++k) {
        const double cur = f(d.chain[static_cast<std::size_t>(k)]);
        g[static_cast<std::size_t>(d.order[static_cast<std::size_t>(k - 1)] - 1)] = cur - prev;
        prev = cur;
    }
    return g;
}

Subset sample_level_set(const HypercubePoint& x, Rng& rng) {
    const double tau = rng.uniform01();
    Subset s = 0;
    for (int i = 1; i <= x.dimension(); ++i) {
        if (x[i - 1] > tau) s = with_element(s, i);
    }
    return s;
}

double regularized_value(const SetFunction& f, const HypercubePoint& x, double h) {
    if (h < 0.0) throw std::invalid_argument("regularized_value: negative regularization");
    double sq = 0.0;
    for (double c : x.coords()) sq += c * c;
    return extension_value(f, x) + 0.5 * h * sq;
}

std::vector<double> regularized_subgradient(const SetFunction& f, const HypercubePoint& x,
                                            double h) {
    if (h < 0.0) throw std::invalid_argument("regularized_subgradient: negative regularization");
    auto g = extension_subgradient(f, x);
    for (int i = 0; i < x.dimension(); ++i) {
        g[static_cast<std::size_t>(i)] += h * x[i];
    }
    return g;
}

}  // namespace dpsubmod
