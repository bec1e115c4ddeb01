#pragma once
#include <cstdint>

namespace sensorsel {

/// SplitMix64 (Steele/Lea/Flood; the java.util.SplittableRandom generator).
/// Deterministic, trivially seedable, and fast enough for desk-scale Monte
/// Carlo. The 64-bit finalizer is exposed as mix64 for substream derivation.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Per-trial substream contract: trial t of run seed S draws from a
/// SplitMix64 whose initial state is mix64(mix64(S) + (t+1) * 0x9E3779B97F4A7C15).
/// Results therefore do not depend on trial execution order.
inline SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial) {
    return SplitMix64(mix64(mix64(seed) + (trial + 1) * 0x9E3779B97F4A7C15ULL));
}

} // namespace sensorsel
