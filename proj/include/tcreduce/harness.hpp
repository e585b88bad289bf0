#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcreduce/reduction.hpp"
#include "tcreduce/rng.hpp"

namespace tcreduce {

// Seeded input generation and parameter sweeps. Every record is a
// deterministic function of (distribution, seed, n, config).

enum class DistKind { normal, uniform, integers, constant };

struct Distribution {
    DistKind kind = DistKind::uniform;
    std::uint64_t seed = 0;
    // integers(lo, hi) bounds, inclusive
    long long lo = 0;
    long long hi = 9;
    // constant(c)
    double c = 1.0;

    std::string name() const {
        switch (kind) {
            case DistKind::normal: return "normal";
            case DistKind::uniform: return "uniform";
            case DistKind::integers:
                return "integers:" + std::to_string(lo) + ":" + std::to_string(hi);
            case DistKind::constant: {
                char buf[32];
                std::snprintf(buf, sizeof buf, "constant:%g", c);
                return buf;
            }
        }
        return "?";
    }
};

inline std::vector<float> generate(const Distribution& dist, std::size_t n) {
    if (n < 1) throw std::invalid_argument("generate requires n >= 1");
    SplitMix64 rng(dist.seed);
    std::vector<float> out;
    out.reserve(n);
    switch (dist.kind) {
        case DistKind::constant:
            out.assign(n, static_cast<float>(dist.c));
            break;
        case DistKind::uniform:
            for (std::size_t i = 0; i < n; ++i)
                out.push_back(static_cast<float>(rng.next_unit()));
            break;
        case DistKind::integers: {
            if (dist.hi < dist.lo) throw std::invalid_argument("integers: hi < lo");
            const std::uint64_t span = static_cast<std::uint64_t>(dist.hi - dist.lo) + 1;
            for (std::size_t i = 0; i < n; ++i)
                out.push_back(static_cast<float>(dist.lo + static_cast<long long>(rng.next() % span)));
            break;
        }
        case DistKind::normal:
            // Box-Muller; pairs share one (radius, angle) draw
            for (std::size_t i = 0; i < n; i += 2) {
                const double u1 = rng.next_unit_open();
                const double u2 = rng.next_unit();
                const double r = std::sqrt(-2.0 * std::log(u1));
                const double t = 2.0 * std::numbers::pi * u2;
                out.push_back(static_cast<float>(r * std::cos(t)));
                if (i + 1 < n) out.push_back(static_cast<float>(r * std::sin(t)));
            }
            break;
    }
    return out;
}

// 100 * |value - reference| / |reference|; undefined when the reference is 0.
inline std::optional<double> error_percent(double value, double reference) {
    if (reference == 0.0) return std::nullopt;
    return 100.0 * std::abs(value - reference) / std::abs(reference);
}

struct SweepRecord {
    ReductionConfig config;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::string dist;
    double value = 0.0;
    std::optional<double> error_pct;
    bool overflow = false;
    std::uint64_t sim_steps = 0;
    std::uint64_t mma_count = 0;
    std::uint64_t atomic_count = 0;
};

inline SweepRecord run_point(const Distribution& dist, std::size_t n,
                             const ReductionConfig& cfg) {
    const std::vector<float> x = generate(dist, n);
    const ReductionOutcome out = reduce(x, cfg);
    SweepRecord rec;
    rec.config = cfg;
    rec.n = n;
    rec.seed = dist.seed;
    rec.dist = dist.name();
    rec.value = out.value;
    rec.error_pct = out.overflow ? std::nullopt : error_percent(out.value, oracle64(x));
    rec.overflow = out.overflow;
    rec.sim_steps = out.sim_steps;
    rec.mma_count = out.mma_count;
    rec.atomic_count = out.atomic_count;
    return rec;
}

inline const std::vector<unsigned>& default_block_grid() {
    static const std::vector<unsigned> g{32, 64, 128, 256, 512, 1024};
    return g;
}

inline const std::vector<unsigned>& default_chain_grid() {
    static const std::vector<unsigned> g{1, 2, 3, 4, 5, 6, 7, 8};
    return g;
}

inline std::vector<double> default_fraction_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 10; ++i) g.push_back(i / 10.0);
    return g;
}

// One record per (B, R) pair, in grid order (B outer, R inner).
inline std::vector<SweepRecord> sweep_br(const Distribution& dist, std::size_t n,
                                         Variant variant,
                                         const std::vector<unsigned>& block_grid,
                                         const std::vector<unsigned>& chain_grid,
                                         std::size_t m = 4) {
    if (block_grid.empty() || chain_grid.empty())
        throw std::invalid_argument("sweep grids must be non-empty");
    std::vector<SweepRecord> records;
    records.reserve(block_grid.size() * chain_grid.size());
    for (unsigned blk : block_grid) {
        for (unsigned chain : chain_grid) {
            ReductionConfig cfg;
            cfg.variant = variant;
            cfg.m = m;
            cfg.R = chain;
            cfg.B = blk;
            records.push_back(run_point(dist, n, cfg));
        }
    }
    return records;
}

// One record per split fraction.
inline std::vector<SweepRecord> sweep_split(const Distribution& dist, std::size_t n,
                                            const std::vector<double>& fraction_grid,
                                            unsigned block = 128, std::size_t m = 4) {
    if (fraction_grid.empty()) throw std::invalid_argument("sweep grids must be non-empty");
    std::vector<SweepRecord> records;
    records.reserve(fraction_grid.size());
    for (double frac : fraction_grid) {
        ReductionConfig cfg;
        cfg.variant = Variant::split;
        cfg.m = m;
        cfg.R = 1;
        cfg.B = block;
        cfg.f = frac;
        records.push_back(run_point(dist, n, cfg));
    }
    return records;
}

// Best-known configurations per variant for the error curves.
inline ReductionConfig curve_config(Variant variant) {
    ReductionConfig cfg;
    cfg.variant = variant;
    switch (variant) {
        case Variant::single_pass:
            cfg.B = 128;
            cfg.R = 4;
            break;
        case Variant::recurrence:
            cfg.B = 32;
            cfg.R = 5;
            break;
        default:
            cfg.B = 128;
            cfg.R = 1;
            break;
    }
    return cfg;
}

// One record per n, ascending, at the variant's best-known config.
inline std::vector<SweepRecord> error_curve(const Distribution& dist, Variant variant,
                                            const std::vector<std::size_t>& n_grid) {
    std::vector<SweepRecord> records;
    records.reserve(n_grid.size());
    const ReductionConfig cfg = curve_config(variant);
    for (std::size_t n : n_grid) records.push_back(run_point(dist, n, cfg));
    return records;
}

// Argmin of sim_steps per element over a sweep; ties keep grid order.
inline const SweepRecord& best_by_steps_per_element(const std::vector<SweepRecord>& records) {
    if (records.empty()) throw std::invalid_argument("no records");
    const SweepRecord* best = &records.front();
    for (const SweepRecord& rec : records) {
        const double cur = static_cast<double>(rec.sim_steps) / static_cast<double>(rec.n);
        const double b = static_cast<double>(best->sim_steps) / static_cast<double>(best->n);
        if (cur < b) best = &rec;
    }
    return *best;
}

} // namespace tcreduce
