#pragma once

#include <cstdint>
#include <random>

namespace gridnav {

/// Deterministic random source. All derived draws are defined directly on the
/// mt19937_64 output stream (no standard-library distributions), so identical
/// seeds give identical sequences on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1): top 53 bits of one engine output.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Unbiased uniform integer in [0, n); rejection sampling on the raw
    /// 64-bit stream.
    std::uint64_t uniform_int(std::uint64_t n) {
        const std::uint64_t bound = n * ((~std::uint64_t{0}) / n);
        std::uint64_t u;
        do {
            u = next_u64();
        } while (u >= bound);
        return u % n;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace gridnav
