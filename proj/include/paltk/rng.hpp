#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace paltk {

/// splitmix64 mixing step; used both as a seed scrambler and to derive
/// independent substreams from (seed, key...) tuples.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seedable splitmix64 generator: deterministic across runs, platforms, and
/// thread counts, and well mixed from the first draw (which matters here
/// because many short per-pair streams are spawned from nearby keys). All
/// distributions are implemented in place; the standard library's
/// distribution objects are not portable.
///
/// Substreams: Rng(seed).split(k1, k2, ...) yields an independent stream
/// keyed by the integers, so per-pair / per-triple streams can be drawn in
/// any order (or in parallel) without changing results.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(mix64(seed)), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    template <typename... Keys>
    Rng split(Keys... keys) const {
        // fold keys into the mixed state, not the raw seed: raw seeds are
        // often small integers, and seed ^ key would collide across streams
        std::uint64_t h = mix64(seed_);
        ((h = mix64(h ^ static_cast<std::uint64_t>(keys))), ...);
        return Rng(h);
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, n), n >= 1. Rejection sampling, no modulo bias.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return x % n;
    }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(uniform_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// Uniform in [0, 1).
    double uniform_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform_real() < p; }

    /// Index sampled from a (not necessarily normalized) weight vector.
    int discrete(const std::vector<double>& weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        double u = uniform_real() * total;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            u -= weights[i];
            if (u < 0.0) return static_cast<int>(i);
        }
        return static_cast<int>(weights.size()) - 1;
    }

    /// Dirichlet(1,...,1) sample: uniform point of the simplex.
    std::vector<double> dirichlet1(int dim) {
        std::vector<double> x(static_cast<std::size_t>(dim));
        double sum = 0.0;
        for (auto& xi : x) {
            xi = -std::log(1.0 - uniform_real());
            sum += xi;
        }
        for (auto& xi : x) xi /= sum;
        return x;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_below(i)]);
        }
    }

    /// k distinct values out of [0, n), returned sorted.
    std::vector<int> sample_without_replacement(int n, int k);

private:
    std::uint64_t state_;
    std::uint64_t seed_;
};

inline std::vector<int> Rng::sample_without_replacement(int n, int k) {
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < k; ++i) {
        const auto j = i + static_cast<int>(uniform_below(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(k));
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace paltk
