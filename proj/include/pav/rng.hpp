#pragma once

#include <cstdint>
#include <random>

#include <gmpxx.h>

namespace pav {

/// Seedable random stream with a fixed cross-platform algorithm: the raw
/// source is std::mt19937_64 (whose output sequence is pinned by the C++
/// standard), and all derived draws below are defined purely in terms of its
/// 64-bit outputs, so identical seeds give identical results on every
/// platform. split() spawns an independent child stream by scrambling one
/// draw with SplitMix64.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    /// Unbiased uniform draw from {0, ..., n-1} by rejection.
    uint64_t below(uint64_t n);

    /// Unbiased uniform draw from {0, ..., n-1} for big n, by top-bit
    /// masked rejection.
    mpz_class below(const mpz_class& n);

    /// Uniform in [0,1) with 53 random bits.
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    Rng split() { return Rng(splitmix64(next_u64())); }

    static uint64_t splitmix64(uint64_t x);

private:
    std::mt19937_64 engine_;
};

}  // namespace pav
