#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "meshroute/errors.hpp"

namespace meshroute {

/// splitmix64 finalizer. Scrambles raw seeds and derives child-stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives an independent stream seed from a base seed and up to three
/// salts (component tag, generation index, method index, ...).
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                    std::uint64_t b = 0, std::uint64_t c = 0) noexcept {
    std::uint64_t h = mix64(base ^ 0xd1b54a32d192ed03ULL);
    h = mix64(h ^ a);
    h = mix64(h ^ b);
    h = mix64(h ^ c);
    return h;
}

/// Seeded random stream. All draw primitives are implemented on top of the
/// raw mt19937_64 output; the <random> distribution classes are
/// implementation-defined, so going through them would make runs
/// non-reproducible across standard libraries.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(mix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform_real(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Unbiased uniform index in [0, n). Rejection-sampled, so no modulo bias.
    std::size_t uniform_index(std::size_t n) {
        if (n == 0) {
            throw ParameterError("uniform_index: empty range");
        }
        const auto bound = static_cast<std::uint64_t>(n);
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) {
                return static_cast<std::size_t>(r % bound);
            }
        }
    }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::swap(values[i - 1], values[uniform_index(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

/// Draws an index with probability weights[i] / sum(weights). Weights must be
/// non-negative with a positive sum.
inline std::size_t spin_roulette(const std::vector<double>& weights, RngStream& rng) {
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) {
            throw ParameterError("spin_roulette: negative weight");
        }
        total += w;
    }
    if (!(total > 0.0)) {
        throw ParameterError("spin_roulette: weights sum to zero");
    }
    const double ticket = rng.uniform01() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (ticket < acc) {
            return i;
        }
    }
    return weights.size() - 1;  // ticket landed on accumulated rounding
}

}  // namespace meshroute
