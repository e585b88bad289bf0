#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "tcreduce/reduction.hpp"

namespace tcreduce {

// Closed forms of the PRAM-like GPU cost model. Unit charges: coalesced
// global r/w = 1, MMA = 1, register/L1 move = 1. Non-coalesced accesses
// would cost kNonCoalescedCost but no variant performs one.
inline constexpr double kNonCoalescedCost = 1.0; // named 'w' in the model; unused by default

struct CostEstimate {
    double steps = 0.0;
    double processors = 0.0;
    double speedup = 0.0;
};

// 4 * log2(n): pairwise reduction charging read, read, add, store per level.
inline double steps_classic(std::size_t n) {
    if (n < 2) throw std::invalid_argument("steps_classic requires n >= 2");
    return 4.0 * std::log2(static_cast<double>(n));
}

// 5 * log_{m^2}(n): two-MMA tensor reduction, 5 charges per level.
inline double steps_tc(std::size_t n, std::size_t m) {
    check_side(m);
    const double group = static_cast<double>(m) * static_cast<double>(m);
    if (static_cast<double>(n) < group) throw std::invalid_argument("steps_tc requires n >= m^2");
    return 5.0 * std::log2(static_cast<double>(n)) / std::log2(group);
}

// (2R+3) * log_{Rm^2}(n): chained variant, R loads + R+1 MMAs + move + store.
inline double steps_chained(std::size_t n, std::size_t m, unsigned chain) {
    check_side(m);
    if (chain < 1) throw std::invalid_argument("steps_chained requires R >= 1");
    const double base = static_cast<double>(chain) * static_cast<double>(m * m);
    if (static_cast<double>(n) < base)
        throw std::invalid_argument("steps_chained requires n >= R*m^2");
    return (2.0 * chain + 3.0) * std::log2(static_cast<double>(n)) / std::log2(base);
}

// (4/5) * log2(m^2) over the classic baseline.
inline double speedup(std::size_t m) {
    check_side(m);
    return 0.8 * std::log2(static_cast<double>(m) * static_cast<double>(m));
}

// Brent sizing: p = n / log2(n) keeps the parallel time within 2*log2(n).
inline double brent_processors(std::size_t n) {
    if (n < 2) throw std::invalid_argument("brent_processors requires n >= 2");
    return static_cast<double>(n) / std::log2(static_cast<double>(n));
}

inline double brent_time_bound(std::size_t n) {
    if (n < 2) throw std::invalid_argument("brent_time_bound requires n >= 2");
    return 2.0 * std::log2(static_cast<double>(n));
}

struct ValidationReport {
    std::uint64_t simulated = 0;
    std::uint64_t expected = 0;
    bool ok = false;
    std::string message;
};

// Cross-check the recurrence simulation against the closed form on exact
// powers n = (R*m^2)^k: the step counter must equal (2R+3)*k.
inline ValidationReport validate_against_sim(const ReductionOutcome& outcome,
                                             const ReductionConfig& cfg, std::size_t n) {
    const std::size_t base = static_cast<std::size_t>(cfg.R) * cfg.m * cfg.m;
    std::size_t k = 0;
    std::size_t p = 1;
    while (p < n) {
        p *= base;
        ++k;
    }
    if (p != n) throw std::invalid_argument("validate_against_sim requires n = (R*m^2)^k");

    ValidationReport rep;
    rep.simulated = outcome.sim_steps;
    rep.expected = (2ull * cfg.R + 3ull) * k;
    rep.ok = rep.simulated == rep.expected;
    rep.message = "sim_steps=" + std::to_string(rep.simulated) +
                  " closed_form=" + std::to_string(rep.expected) +
                  (rep.ok ? " (match)" : " (MISMATCH)");
    return rep;
}

} // namespace tcreduce
