#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcreduce/fragment.hpp"
#include "tcreduce/half.hpp"
#include "tcreduce/rng.hpp"

namespace tcreduce {

// Deterministic CPU simulations of the reduction variants over the
// grid/block/warp execution model. Each run is single-threaded; distinct
// runs share no state.

enum class Variant { oracle64, shuffle32, half_tree, recurrence, single_pass, split };

enum class AtomicOrder { ascending, seeded_permutation };

inline const char* variant_name(Variant v) {
    switch (v) {
        case Variant::oracle64: return "oracle64";
        case Variant::shuffle32: return "shuffle32";
        case Variant::half_tree: return "half_tree";
        case Variant::recurrence: return "recurrence";
        case Variant::single_pass: return "single_pass";
        case Variant::split: return "split";
    }
    return "?";
}

struct ReductionConfig {
    Variant variant = Variant::single_pass;
    std::size_t m = 4;        // fragment side
    unsigned R = 1;           // MMA chain length per warp
    unsigned B = 128;         // block size in threads, multiple of 32
    double f = 0.5;           // tensor fraction, split variant only
    AtomicOrder atomic_order = AtomicOrder::ascending;
    std::uint64_t atomic_seed = 0;

    unsigned warps_per_block() const { return B / 32; }

    void validate() const {
        check_side(m);
        if (R < 1) throw std::invalid_argument("R must be >= 1");
        if (B < 32 || B > 1024 || B % 32 != 0)
            throw std::invalid_argument("B must be a multiple of 32 in [32, 1024]");
        if (f < 0.0 || f > 1.0) throw std::invalid_argument("f must be in [0, 1]");
    }
};

struct ReductionOutcome {
    double value = 0.0;       // binary32 result (binary64 for the oracle)
    bool overflow = false;    // some Half produced during the run was non-finite
    std::uint64_t level_count = 0;
    std::uint64_t sim_steps = 0;
    std::uint64_t mma_count = 0;
    std::uint64_t atomic_count = 0;
    std::uint64_t shuffle_count = 0;
};

namespace detail {

struct SimCounters {
    MmaStats mma;
    std::uint64_t atomic_count = 0;
    std::uint64_t shuffle_count = 0;
    std::uint64_t sim_steps = 0;
    bool overflow = false;

    void note(Half h) { overflow = overflow || is_overflowed(h); }
    void note(const HalfFragment& f) {
        for (Half h : f.elems) note(h);
    }
};

inline std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

inline std::size_t next_pow2(std::size_t n) { return n <= 1 ? 1 : std::bit_ceil(n); }

// Binary32 pairwise tree: slot i gets x[i] + x[i + len/2] at each level.
// Returns the levels executed; `ops` counts one shuffle per pair added.
inline unsigned pairwise_tree(std::vector<float>& v, std::uint64_t& ops) {
    v.resize(next_pow2(v.size()), 0.0f);
    unsigned levels = 0;
    for (std::size_t len = v.size(); len > 1; len /= 2) {
        for (std::size_t i = 0; i < len / 2; ++i) {
            v[i] = v[i] + v[i + len / 2];
            ++ops;
        }
        ++levels;
    }
    return levels;
}

} // namespace detail

// Left-to-right sequential binary64 sum; the error reference for everything.
inline double oracle64(std::span<const float> x) {
    double acc = 0.0;
    for (float v : x) acc += static_cast<double>(v);
    return acc;
}

// Classic FP32 warp-shuffle-style baseline: zero-padded pairwise tree.
inline ReductionOutcome shuffle32_reduce(std::span<const float> x) {
    if (x.empty()) throw std::invalid_argument("input must be non-empty");
    ReductionOutcome out;
    std::vector<float> v(x.begin(), x.end());
    const unsigned levels = detail::pairwise_tree(v, out.shuffle_count);
    out.value = v[0];
    out.level_count = levels;
    out.sim_steps = 4ull * levels; // read, read, add, store per level
    return out;
}

// Same tree, but every partial is stored through binary16; the behavioral
// stand-in for an FP16 library reduction.
inline ReductionOutcome half_tree_reduce(std::span<const float> x) {
    if (x.empty()) throw std::invalid_argument("input must be non-empty");
    ReductionOutcome out;
    std::vector<float> v;
    v.reserve(x.size());
    for (float f : x) {
        const Half h = from_single(f);
        out.overflow = out.overflow || is_overflowed(h);
        v.push_back(to_single(h));
    }
    v.resize(detail::next_pow2(v.size()), 0.0f);
    unsigned levels = 0;
    for (std::size_t len = v.size(); len > 1; len /= 2) {
        for (std::size_t i = 0; i < len / 2; ++i) {
            const Half h = from_single(v[i] + v[i + len / 2]);
            out.overflow = out.overflow || is_overflowed(h);
            v[i] = to_single(h);
            ++out.shuffle_count;
        }
        ++levels;
    }
    out.value = v[0];
    out.level_count = levels;
    out.sim_steps = 4ull * levels;
    return out;
}

// Base index of a warp's contiguous chunk of R*m^2 elements.
inline std::size_t warp_offset(std::size_t block_id, std::size_t warp_in_block,
                               const ReductionConfig& cfg) {
    return static_cast<std::size_t>(cfg.R) * cfg.m * cfg.m *
           (block_id * cfg.warps_per_block() + warp_in_block);
}

// C_r = ones x M_r + C_{r-1} for r = 1..R, then C_{R+1} = C_R x ones + 0.
// The accumulator is copied into the half-precision A operand before the
// final MMA, mirroring the fragment register move between the chain and the
// finalizing multiply.
inline float chained_warp_reduce(std::span<const float> x, std::size_t base,
                                 const ReductionConfig& cfg, detail::SimCounters& sc) {
    const std::size_t m = cfg.m;
    const std::size_t group = m * m;
    if (base + cfg.R * group > x.size())
        throw std::out_of_range("chained_warp_reduce: chunk exceeds input");

    const HalfFragment ones = fill_half_fragment(m, 1.0f);
    AccumFragment c = fill_accum_fragment(m, 0.0f);
    for (unsigned r = 0; r < cfg.R; ++r) {
        const HalfFragment mr = load_fragment(x, base + r * group, m);
        sc.note(mr);
        ++sc.mma.loads;
        c = mma(ones, mr, c, sc.mma);
    }
    HalfFragment a(m);
    for (std::size_t i = 0; i < group; ++i) a.elems[i] = from_single(c.elems[i]);
    sc.note(a);
    const AccumFragment d = mma(a, ones, fill_accum_fragment(m, 0.0f), sc.mma);
    return d.at(0, 0);
}

// Multi-level bottom-up reduction: each level collapses chunks of R*m^2
// elements and writes the partials back through binary16, shrinking n by a
// factor of R*m^2 until one value remains.
inline ReductionOutcome recurrence_reduce(std::span<const float> x, ReductionConfig cfg) {
    if (x.empty()) throw std::invalid_argument("input must be non-empty");
    cfg.validate();
    detail::SimCounters sc;
    ReductionOutcome out;

    std::vector<float> work(x.begin(), x.end());
    const std::size_t group = cfg.m * cfg.m;
    const std::size_t chunk = static_cast<std::size_t>(cfg.R) * group;

    std::size_t n = work.size();
    while (n >= group) {
        const std::size_t count = detail::ceil_div(n, chunk);
        work.resize(count * chunk, 0.0f);
        for (std::size_t i = 0; i < count; ++i) {
            const float r = chained_warp_reduce(work, i * chunk, cfg, sc);
            const Half h = from_single(r);
            sc.note(h);
            work[i] = to_single(h);
        }
        work.resize(count);
        n = count;
        ++out.level_count;
        sc.sim_steps += 2ull * cfg.R + 3; // R loads, R+1 MMAs, register move, store
    }

    if (n == 1) {
        out.value = work[0];
    } else {
        // leftover smaller than one group: final zero-padded two-step reduce
        work.resize(group, 0.0f);
        ReductionConfig final_cfg = cfg;
        final_cfg.R = 1;
        out.value = chained_warp_reduce(work, 0, final_cfg, sc);
        sc.sim_steps += 5;
    }

    out.overflow = sc.overflow;
    out.sim_steps = sc.sim_steps;
    out.mma_count = sc.mma.mma_count;
    out.shuffle_count = sc.shuffle_count;
    return out;
}

namespace detail {

// Shared single-pass machinery: chained MMAs per warp, a pairwise tree of
// the warp results per block, then serialized atomic accumulation of block
// results. Warp and block partials stay in binary32 throughout.
inline float single_pass_core(std::span<const float> x, const ReductionConfig& cfg,
                              SimCounters& sc, std::uint64_t& levels) {
    const std::size_t chunk_warp = static_cast<std::size_t>(cfg.R) * cfg.m * cfg.m;
    const std::size_t chunk_block = chunk_warp * cfg.warps_per_block();
    const std::size_t blocks = std::max<std::size_t>(1, ceil_div(x.size(), chunk_block));

    std::vector<float> padded(x.begin(), x.end());
    padded.resize(blocks * chunk_block, 0.0f);

    std::uint64_t tree_levels = 0;
    std::vector<float> block_results(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        std::vector<float> warp_results(cfg.warps_per_block());
        for (std::size_t w = 0; w < warp_results.size(); ++w)
            warp_results[w] = chained_warp_reduce(padded, warp_offset(b, w, cfg), cfg, sc);
        tree_levels = pairwise_tree(warp_results, sc.shuffle_count);
        block_results[b] = warp_results[0];
    }

    std::vector<std::size_t> order(blocks);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (cfg.atomic_order == AtomicOrder::seeded_permutation) {
        SplitMix64 rng(cfg.atomic_seed);
        for (std::size_t i = blocks; i > 1; --i)
            std::swap(order[i - 1], order[rng.next() % i]);
    }
    float acc = 0.0f;
    for (std::size_t idx : order) {
        acc += block_results[idx];
        ++sc.atomic_count;
    }

    levels = 1;
    sc.sim_steps += 2ull * cfg.R + 2; // parallel chains: loads, MMAs, register move
    sc.sim_steps += tree_levels;      // register-speed shuffle stage
    sc.sim_steps += blocks;           // serialized atomics
    return acc;
}

} // namespace detail

// Single-pass kernel simulation: chained MMAs, per-block warp-shuffle tree,
// atomic accumulation, all in one grid launch.
inline ReductionOutcome single_pass_reduce(std::span<const float> x, ReductionConfig cfg) {
    if (x.empty()) throw std::invalid_argument("input must be non-empty");
    cfg.validate();
    detail::SimCounters sc;
    ReductionOutcome out;
    out.value = detail::single_pass_core(x, cfg, sc, out.level_count);
    out.overflow = sc.overflow;
    out.sim_steps = sc.sim_steps;
    out.mma_count = sc.mma.mma_count;
    out.atomic_count = sc.atomic_count;
    out.shuffle_count = sc.shuffle_count;
    return out;
}

// Split-in-two: a fraction f of the input (aligned down to whole block
// chunks) takes the tensor path with R = 1; the remainder takes the classic
// pairwise path; the two partials are added in binary32.
inline ReductionOutcome split_reduce(std::span<const float> x, ReductionConfig cfg) {
    if (x.empty()) throw std::invalid_argument("input must be non-empty");
    cfg.validate();
    ReductionConfig tensor_cfg = cfg;
    tensor_cfg.R = 1;

    const std::size_t chunk_block = cfg.m * cfg.m * cfg.warps_per_block();
    std::size_t tensor_len = static_cast<std::size_t>(cfg.f * static_cast<double>(x.size()));
    tensor_len = tensor_len / chunk_block * chunk_block;

    ReductionOutcome out;
    detail::SimCounters sc;
    float tensor_part = 0.0f;
    std::uint64_t tensor_steps = 0;
    if (tensor_len > 0) {
        std::uint64_t levels = 0;
        tensor_part = detail::single_pass_core(x.subspan(0, tensor_len), tensor_cfg, sc, levels);
        tensor_steps = sc.sim_steps;
        out.level_count = levels;
    }

    float shuffle_part = 0.0f;
    std::uint64_t shuffle_steps = 0;
    if (tensor_len < x.size()) {
        ReductionOutcome sh = shuffle32_reduce(x.subspan(tensor_len));
        shuffle_part = static_cast<float>(sh.value);
        shuffle_steps = sh.sim_steps;
        out.shuffle_count = sh.shuffle_count;
        out.level_count = std::max(out.level_count, sh.level_count);
    }

    if (tensor_len == 0)
        out.value = shuffle_part;
    else if (tensor_len == x.size())
        out.value = tensor_part;
    else
        out.value = tensor_part + shuffle_part;
    out.overflow = sc.overflow;
    out.sim_steps = std::max(tensor_steps, shuffle_steps) + (tensor_len > 0 && tensor_len < x.size() ? 1 : 0);
    out.mma_count = sc.mma.mma_count;
    out.atomic_count = sc.atomic_count;
    out.shuffle_count += sc.shuffle_count;
    return out;
}

// Dispatch on cfg.variant.
inline ReductionOutcome reduce(std::span<const float> x, const ReductionConfig& cfg) {
    switch (cfg.variant) {
        case Variant::oracle64: {
            ReductionOutcome out;
            out.value = oracle64(x);
            return out;
        }
        case Variant::shuffle32: return shuffle32_reduce(x);
        case Variant::half_tree: return half_tree_reduce(x);
        case Variant::recurrence: return recurrence_reduce(x, cfg);
        case Variant::single_pass: return single_pass_reduce(x, cfg);
        case Variant::split: return split_reduce(x, cfg);
    }
    throw std::invalid_argument("unknown variant");
}

} // namespace tcreduce
