#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>

#include "half_reference.hpp"
#include "tcreduce/half.hpp"
#include "tcreduce/rng.hpp"

using namespace tcreduce;

namespace {

float bits_to_float(std::uint32_t u) {
    float f;
    std::memcpy(&f, &u, sizeof f);
    return f;
}

} // namespace

TEST_CASE("from_single on representable and rounded values") {
    CHECK(to_single(from_single(1.0f)) == 1.0f);
    CHECK(from_single(1.0f).bits == 0x3C00);
    CHECK(to_single(from_single(0.1f)) == 0.0999755859375f);
    CHECK(std::isinf(to_single(from_single(65520.0f))));
    CHECK(to_single(from_single(65519.0f)) == 65504.0f);
    CHECK(to_single(from_single(-0.0f)) == 0.0f);
    CHECK(from_single(-0.0f).bits == 0x8000);
}

TEST_CASE("from_single special values") {
    CHECK(from_single(std::numeric_limits<float>::infinity()).bits == 0x7C00);
    CHECK(from_single(-std::numeric_limits<float>::infinity()).bits == 0xFC00);
    // one canonical quiet NaN, payload and sign dropped
    CHECK(from_single(std::nanf("")).bits == Half::kQuietNan);
    CHECK(from_single(-std::nanf("0x123")).bits == Half::kQuietNan);
}

TEST_CASE("to_single exact widening") {
    CHECK(to_single(Half{0x3C00}) == 1.0f);
    CHECK(to_single(Half{0x7BFF}) == 65504.0f);
    CHECK(to_single(Half{0x0001}) == 5.9604644775390625e-8f); // 2^-24
    CHECK(to_single(Half{0x0000}) == 0.0f);
}

TEST_CASE("is_overflowed") {
    CHECK(is_overflowed(Half{0x7C00}));
    CHECK(is_overflowed(Half{0xFC00}));
    CHECK(is_overflowed(Half{Half::kQuietNan}));
    CHECK_FALSE(is_overflowed(Half{0x7BFF}));
    CHECK(is_overflowed(from_single(70000.0f)));
}

TEST_CASE("round-trip is identity for every finite pattern") {
    for (std::uint32_t b = 0; b < 0x10000; ++b) {
        const Half h{static_cast<std::uint16_t>(b)};
        if (is_overflowed(h)) continue;
        CHECK(from_single(to_single(h)).bits == h.bits);
    }
}

TEST_CASE("to_single agrees with the bit-level decode reference on all patterns") {
    for (std::uint32_t b = 0; b < 0x10000; ++b) {
        const Half h{static_cast<std::uint16_t>(b)};
        const double ref = halfref::decode(h.bits);
        const float got = to_single(h);
        if (std::isnan(ref))
            CHECK(std::isnan(got));
        else
            CHECK(static_cast<double>(got) == ref);
    }
}

TEST_CASE("from_single agrees with the nearest-value reference") {
    SplitMix64 rng(0xC0FFEE);
    std::size_t checked = 0;
    while (checked < 50000) {
        const float x = bits_to_float(static_cast<std::uint32_t>(rng.next()));
        if (std::isnan(x)) continue;
        CHECK(from_single(x).bits == halfref::nearest(x));
        ++checked;
    }
    // midpoints and near-boundary values, where ties-to-even bites
    for (std::uint32_t b = 0; b < 0x7C00; ++b) {
        const double v = halfref::decode(static_cast<std::uint16_t>(b));
        const float mid = static_cast<float>(v + halfref::decode(0x0001) / 2.0);
        CHECK(from_single(mid).bits == halfref::nearest(mid));
    }
}

TEST_CASE("half-ulp error bound on finite conversions") {
    SplitMix64 rng(42);
    for (int i = 0; i < 100000; ++i) {
        const float x = static_cast<float>((rng.next_unit() * 2.0 - 1.0) * 65504.0);
        const float back = to_single(from_single(x));
        const double bound = 0x1.0p-11 * std::max(std::fabs(static_cast<double>(x)), 0x1.0p-14);
        CHECK(std::fabs(static_cast<double>(back) - static_cast<double>(x)) <= bound);
    }
    for (std::uint16_t b = 0; b < 0x7C00; ++b) {
        const float exact = to_single(Half{b});
        CHECK(to_single(from_single(exact)) == exact);
    }
}

TEST_CASE("from_single is monotone on finite inputs") {
    SplitMix64 rng(7);
    for (int i = 0; i < 100000; ++i) {
        float a = static_cast<float>((rng.next_unit() * 2.0 - 1.0) * 70000.0);
        float b = static_cast<float>((rng.next_unit() * 2.0 - 1.0) * 70000.0);
        if (a > b) std::swap(a, b);
        CHECK(to_single(from_single(a)) <= to_single(from_single(b)));
    }
}

TEST_CASE("ordering of finite halves matches their binary32 images") {
    for (int i = 0; i < 20000; ++i) {
        SplitMix64 rng(static_cast<std::uint64_t>(i) + 99);
        const Half a{static_cast<std::uint16_t>(rng.next() & 0xFFFF)};
        const Half b{static_cast<std::uint16_t>(rng.next() & 0xFFFF)};
        if (is_overflowed(a) || is_overflowed(b)) continue;
        CHECK((halfref::decode(a.bits) < halfref::decode(b.bits)) ==
              (to_single(a) < to_single(b)));
    }
}
