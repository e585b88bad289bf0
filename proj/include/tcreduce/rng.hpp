#pragma once

#include <cstdint>

namespace tcreduce {

// SplitMix64 (Steele, Lea, Flood / Vigna). Fixed constants so every run of
// the toolkit, on any platform, draws the identical stream for a given seed.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1), 53 random bits
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1], safe as a log() argument
    double next_unit_open() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }
};

} // namespace tcreduce
