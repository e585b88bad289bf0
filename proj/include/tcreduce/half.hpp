#pragma once

#include <cstdint>
#include <cstring>

namespace tcreduce {

// IEEE-754 binary16: 1 sign bit, 5 exponent bits, 10 significand bits.
// Conversions use round-to-nearest-even; subnormals are kept, not flushed.
// NaN is canonicalized to a single quiet pattern.
struct Half {
    std::uint16_t bits = 0;

    static constexpr std::uint16_t kQuietNan = 0x7E00;
    static constexpr float kMaxFinite = 65504.0f;

    friend bool operator==(Half a, Half b) { return a.bits == b.bits; }
};

namespace detail {

inline std::uint32_t round_shift_even(std::uint32_t v, unsigned s) {
    const std::uint32_t halfway = 1u << (s - 1);
    const std::uint32_t rem = v & ((1u << s) - 1);
    std::uint32_t r = v >> s;
    if (rem > halfway || (rem == halfway && (r & 1u))) ++r;
    return r;
}

} // namespace detail

inline Half from_single(float x) {
    std::uint32_t u;
    std::memcpy(&u, &x, sizeof u);
    const std::uint32_t sign = (u >> 16) & 0x8000u;
    u &= 0x7FFFFFFFu;

    if (u >= 0x7F800000u) {
        if (u > 0x7F800000u) return Half{Half::kQuietNan};
        return Half{static_cast<std::uint16_t>(sign | 0x7C00u)};
    }
    const std::uint32_t e = u >> 23;
    const std::uint32_t m = u & 0x7FFFFFu;

    if (e < 113) {
        // below 2^-14: binary16 subnormal range (or underflow to zero)
        if (e < 102) return Half{static_cast<std::uint16_t>(sign)};
        const std::uint32_t sig = detail::round_shift_even(m | 0x800000u, 126 - e);
        // sig == 1024 carries into the smallest normal encoding
        return Half{static_cast<std::uint16_t>(sign | sig)};
    }
    if (e >= 143) return Half{static_cast<std::uint16_t>(sign | 0x7C00u)};

    std::uint32_t v = ((e - 112) << 10) | (m >> 13);
    const std::uint32_t rem = m & 0x1FFFu;
    if (rem > 0x1000u || (rem == 0x1000u && (v & 1u))) ++v; // carry may bump the exponent
    if (v >= 0x7C00u) return Half{static_cast<std::uint16_t>(sign | 0x7C00u)};
    return Half{static_cast<std::uint16_t>(sign | v)};
}

inline float to_single(Half h) {
    const std::uint32_t sign = static_cast<std::uint32_t>(h.bits & 0x8000u) << 16;
    const std::uint32_t e = (h.bits >> 10) & 0x1Fu;
    const std::uint32_t m = h.bits & 0x3FFu;
    std::uint32_t u;
    if (e == 0) {
        // subnormal: m * 2^-24, exact in binary32
        float f = static_cast<float>(m) * 0x1.0p-24f;
        std::memcpy(&u, &f, sizeof u);
        u |= sign;
    } else if (e == 31) {
        u = sign | 0x7F800000u | (m << 13);
    } else {
        u = sign | ((e + 112) << 23) | (m << 13);
    }
    float out;
    std::memcpy(&out, &u, sizeof out);
    return out;
}

// True iff h is +-infinity or NaN (any partial past 65504 in magnitude).
inline bool is_overflowed(Half h) { return (h.bits & 0x7C00u) == 0x7C00u; }

} // namespace tcreduce
