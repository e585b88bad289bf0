#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "tcreduce/half.hpp"

namespace tcreduce {

// Warp-scoped m x m matrix registers. A and B operands hold binary16
// elements, accumulators hold binary32. Row-major storage.

struct MmaStats {
    std::uint64_t mma_count = 0;
    std::uint64_t loads = 0;
    std::uint64_t stores = 0;
};

inline void check_side(std::size_t m) {
    if (m < 2 || (m & (m - 1)) != 0)
        throw std::invalid_argument("fragment side must be a power of two >= 2");
}

struct HalfFragment {
    std::size_t m = 0;
    std::vector<Half> elems;

    HalfFragment() = default;
    explicit HalfFragment(std::size_t side) : m(side), elems(side * side) { check_side(side); }

    Half& at(std::size_t i, std::size_t j) { return elems[i * m + j]; }
    Half at(std::size_t i, std::size_t j) const { return elems[i * m + j]; }
};

struct AccumFragment {
    std::size_t m = 0;
    std::vector<float> elems;

    AccumFragment() = default;
    explicit AccumFragment(std::size_t side) : m(side), elems(side * side, 0.0f) { check_side(side); }

    float& at(std::size_t i, std::size_t j) { return elems[i * m + j]; }
    float at(std::size_t i, std::size_t j) const { return elems[i * m + j]; }
};

inline HalfFragment fill_half_fragment(std::size_t m, float value) {
    HalfFragment f(m);
    const Half h = from_single(value);
    for (auto& e : f.elems) e = h;
    return f;
}

inline AccumFragment fill_accum_fragment(std::size_t m, float value) {
    AccumFragment f(m);
    for (auto& e : f.elems) e = value;
    return f;
}

inline HalfFragment load_fragment(std::span<const float> src, std::size_t offset, std::size_t m) {
    check_side(m);
    const std::size_t count = m * m;
    if (offset > src.size() || src.size() - offset < count)
        throw std::out_of_range("load_fragment: region exceeds source array");
    HalfFragment f(m);
    for (std::size_t i = 0; i < count; ++i) f.elems[i] = from_single(src[offset + i]);
    return f;
}

inline void store_fragment(const AccumFragment& frag, std::span<float> dst, std::size_t offset) {
    const std::size_t count = frag.m * frag.m;
    if (offset > dst.size() || dst.size() - offset < count)
        throw std::out_of_range("store_fragment: region exceeds destination array");
    for (std::size_t i = 0; i < count; ++i) dst[offset + i] = frag.elems[i];
}

// D = A x B + C. Products widen both binary16 operands to binary32 (each
// product is exact there); the inner sum runs left-to-right in ascending k
// and C is added last, all in binary32.
inline AccumFragment mma(const HalfFragment& a, const HalfFragment& b, const AccumFragment& c,
                         MmaStats& stats) {
    if (a.m != b.m || a.m != c.m) throw std::invalid_argument("mma: fragment sides differ");
    const std::size_t m = a.m;
    AccumFragment d(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            float acc = 0.0f;
            for (std::size_t k = 0; k < m; ++k)
                acc += to_single(a.at(i, k)) * to_single(b.at(k, j));
            d.at(i, j) = acc + c.at(i, j);
        }
    }
    ++stats.mma_count;
    return d;
}

} // namespace tcreduce
