#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "tcreduce/harness.hpp"

namespace tcreduce {

// Fixed-schema CSV: the column set and order never vary with flags, the
// decimal point is '.', overflow prints as true/false.
inline constexpr const char* kCsvHeader =
    "variant,n,m,R,B,f,seed,dist,value,error_pct,overflow,sim_steps,mma_count,atomic_count";

namespace detail {

inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

} // namespace detail

inline std::string csv_row(const SweepRecord& rec) {
    std::string row;
    row += variant_name(rec.config.variant);
    row += ',' + std::to_string(rec.n);
    row += ',' + std::to_string(rec.config.m);
    row += ',' + std::to_string(rec.config.R);
    row += ',' + std::to_string(rec.config.B);
    row += ',' + detail::fmt_double(rec.config.f);
    row += ',' + std::to_string(rec.seed);
    row += ',' + rec.dist;
    row += ',' + detail::fmt_double(rec.value);
    row += ',';
    row += rec.error_pct ? detail::fmt_double(*rec.error_pct) : "nan";
    row += ',';
    row += rec.overflow ? "true" : "false";
    row += ',' + std::to_string(rec.sim_steps);
    row += ',' + std::to_string(rec.mma_count);
    row += ',' + std::to_string(rec.atomic_count);
    return row;
}

inline void write_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
    os << kCsvHeader << '\n';
    for (const SweepRecord& rec : records) os << csv_row(rec) << '\n';
}

} // namespace tcreduce
