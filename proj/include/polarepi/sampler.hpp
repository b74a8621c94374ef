#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "polarepi/scalar.hpp"

namespace polarepi {

/// Bounds for randomly drawn scalars: every component is (n/d)·p^e with
/// |n|, d ≤ height and e ∈ [min_power, max_power].
struct ScalarShape {
    long height = 5;
    unsigned long prime = 2;
    int min_power = -2;
    int max_power = 2;
};

/**
 * Seedable, splittable generator. All randomness in the library and its
 * suites flows through this type; a split child is an independent stream
 * whose seed is derived deterministically from the parent.
 */
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

    std::uint64_t seed() const noexcept { return seed_; }

    Sampler split() { return Sampler(mix(engine_() ^ 0x9e3779b97f4a7c15ULL)); }

    std::uint64_t next() { return engine_(); }

    long uniform(long lo, long hi)
    {
        return std::uniform_int_distribution<long>(lo, hi)(engine_);
    }

    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }

    Rational rational(const ScalarShape& shape);
    Scalar scalar(FieldKind kind, const ScalarShape& shape);
    Scalar nonzero_scalar(FieldKind kind, const ScalarShape& shape);

private:
    static std::uint64_t mix(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Draws one scalar; same generator state gives the same value.
inline Scalar sample_scalar(Sampler& rng, FieldKind kind, const ScalarShape& shape)
{
    return rng.scalar(kind, shape);
}

}  // namespace polarepi
