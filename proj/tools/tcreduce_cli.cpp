#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tcreduce/cost_model.hpp"
#include "tcreduce/csv.hpp"
#include "tcreduce/harness.hpp"
#include "tcreduce/reduction.hpp"

namespace {

using namespace tcreduce;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Variant parse_variant(const std::string& s) {
    if (s == "oracle64") return Variant::oracle64;
    if (s == "shuffle32") return Variant::shuffle32;
    if (s == "half_tree") return Variant::half_tree;
    if (s == "recurrence") return Variant::recurrence;
    if (s == "single_pass") return Variant::single_pass;
    if (s == "split") return Variant::split;
    throw UsageError("unknown variant: " + s);
}

Distribution parse_dist(const std::string& s, std::uint64_t seed) {
    Distribution d;
    d.seed = seed;
    if (s == "normal") {
        d.kind = DistKind::normal;
    } else if (s == "uniform") {
        d.kind = DistKind::uniform;
    } else if (s.rfind("constant:", 0) == 0) {
        d.kind = DistKind::constant;
        d.c = std::stod(s.substr(9));
    } else if (s.rfind("integers:", 0) == 0) {
        d.kind = DistKind::integers;
        const std::string rest = s.substr(9);
        const auto colon = rest.find(':');
        if (colon == std::string::npos) throw UsageError("integers needs lo:hi bounds");
        d.lo = std::stoll(rest.substr(0, colon));
        d.hi = std::stoll(rest.substr(colon + 1));
    } else {
        throw UsageError("unknown distribution: " + s);
    }
    return d;
}

// Grid token: either a comma list "32,64,128" or a range "0:1:0.1".
std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        double start = 0, stop = 0, step = 1;
        if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 || step <= 0)
            throw UsageError("bad grid range: " + s);
        for (double v = start; v <= stop + step * 1e-9; v += step) out.push_back(v);
        return out;
    }
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stod(tok));
    if (out.empty()) throw UsageError("empty grid: " + s);
    return out;
}

std::vector<float> read_input_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    std::vector<float> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            std::size_t pos = 0;
            const float v = std::stof(line, &pos);
            if (line.find_first_not_of(" \t\r", pos) != std::string::npos)
                throw InputError("");
            out.push_back(v);
        } catch (const std::exception&) {
            throw InputError("malformed value at " + path + ":" + std::to_string(lineno));
        }
    }
    if (out.empty()) throw InputError("input file is empty: " + path);
    return out;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("TCREDUCE_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

void emit_csv(const std::vector<SweepRecord>& records, const std::string& out_path) {
    if (out_path.empty()) {
        write_csv(std::cout, records);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw InputError("cannot open output file: " + out_path);
        write_csv(out, records);
    }
}

struct ReduceArgs {
    std::string variant = "single_pass";
    std::size_t n = 0;
    std::string dist = "uniform";
    std::uint64_t seed = default_seed();
    std::size_t m = 4;
    unsigned chain = 1;
    unsigned block = 128;
    double fraction = 0.5;
    std::string input_file;
};

int run_reduce(const ReduceArgs& args) {
    ReductionConfig cfg;
    cfg.variant = parse_variant(args.variant);
    cfg.m = args.m;
    cfg.R = args.chain;
    cfg.B = args.block;
    cfg.f = args.fraction;
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }

    std::vector<float> x;
    std::string dist_name;
    if (!args.input_file.empty()) {
        x = read_input_file(args.input_file);
        dist_name = "file";
    } else {
        if (args.n < 1) throw UsageError("--n must be >= 1 (or pass --input)");
        const Distribution d = parse_dist(args.dist, args.seed);
        x = generate(d, args.n);
        dist_name = d.name();
    }

    const ReductionOutcome out = reduce(x, cfg);
    const double ref = oracle64(x);
    const auto err = out.overflow ? std::nullopt : error_percent(out.value, ref);

    std::printf("variant      : %s\n", variant_name(cfg.variant));
    std::printf("n            : %zu  (%s)\n", x.size(), dist_name.c_str());
    std::printf("value        : %.9g\n", out.value);
    std::printf("oracle64     : %.17g\n", ref);
    if (out.overflow)
        std::printf("error_pct    : overflow\n");
    else if (err)
        std::printf("error_pct    : %.9g\n", *err);
    else
        std::printf("error_pct    : undefined (reference is 0)\n");
    std::printf("overflow     : %s\n", out.overflow ? "true" : "false");
    std::printf("level_count  : %llu\n", static_cast<unsigned long long>(out.level_count));
    std::printf("sim_steps    : %llu\n", static_cast<unsigned long long>(out.sim_steps));
    std::printf("mma_count    : %llu\n", static_cast<unsigned long long>(out.mma_count));
    std::printf("atomic_count : %llu\n", static_cast<unsigned long long>(out.atomic_count));
    std::printf("shuffle_count: %llu\n", static_cast<unsigned long long>(out.shuffle_count));
    return kExitOk;
}

int run_cost(std::size_t n, std::size_t m, std::optional<unsigned> chain) {
    try {
        std::printf("steps_classic    : %.9g\n", steps_classic(n));
        std::printf("steps_tc         : %.9g\n", steps_tc(n, m));
        if (chain) std::printf("steps_chained    : %.9g\n", steps_chained(n, m, *chain));
        std::printf("speedup          : %.9g\n", speedup(m));
        std::printf("brent_processors : %.9g\n", brent_processors(n));
        std::printf("brent_time_bound : %.9g\n", brent_time_bound(n));
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    return kExitOk;
}

struct SweepArgs {
    std::string variant = "single_pass";
    std::string dist = "normal";
    std::size_t n = 1u << 20;
    std::uint64_t seed = default_seed();
    std::size_t m = 4;
    std::string block_grid;
    std::string chain_grid;
    std::string fraction_grid;
    std::string out_path;
};

int run_sweep(const SweepArgs& args) {
    const Variant variant = parse_variant(args.variant);
    const Distribution dist = parse_dist(args.dist, args.seed);

    std::vector<SweepRecord> records;
    if (variant == Variant::split || !args.fraction_grid.empty()) {
        std::vector<double> fracs = args.fraction_grid.empty()
                                        ? default_fraction_grid()
                                        : parse_grid(args.fraction_grid);
        for (double frac : fracs)
            if (frac < 0 || frac > 1) throw UsageError("split fractions must lie in [0, 1]");
        records = sweep_split(dist, args.n, fracs, 128, args.m);
    } else {
        std::vector<unsigned> blocks, chains;
        for (double v : args.block_grid.empty() ? std::vector<double>{32, 64, 128, 256, 512, 1024}
                                                : parse_grid(args.block_grid))
            blocks.push_back(static_cast<unsigned>(v));
        for (double v : args.chain_grid.empty() ? std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8}
                                                : parse_grid(args.chain_grid))
            chains.push_back(static_cast<unsigned>(v));
        records = sweep_br(dist, args.n, variant, blocks, chains, args.m);
    }
    emit_csv(records, args.out_path);

    const SweepRecord& best = best_by_steps_per_element(records);
    std::fprintf(stderr, "best config: B=%u R=%u f=%g (sim_steps/element = %.9g)\n",
                 best.config.B, best.config.R, best.config.f,
                 static_cast<double>(best.sim_steps) / static_cast<double>(best.n));
    return kExitOk;
}

struct CurveArgs {
    std::vector<std::string> variants;
    std::string dist = "uniform";
    std::string n_grid;
    std::uint64_t seed = default_seed();
    std::string out_path;
};

int run_error_curve(const CurveArgs& args) {
    const Distribution dist = parse_dist(args.dist, args.seed);
    std::vector<std::size_t> sizes;
    if (args.n_grid.empty()) {
        for (std::size_t n = 1u << 10; n <= (1u << 27); n <<= 1) sizes.push_back(n);
    } else {
        for (double v : parse_grid(args.n_grid)) sizes.push_back(static_cast<std::size_t>(v));
    }
    std::vector<SweepRecord> records;
    for (const std::string& vname : args.variants) {
        const auto part = error_curve(dist, parse_variant(vname), sizes);
        records.insert(records.end(), part.begin(), part.end());
    }
    emit_csv(records, args.out_path);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic emulator for tensor-core style chained MMA reductions"};
    app.require_subcommand(1);

    ReduceArgs rargs;
    CLI::App* reduce_cmd = app.add_subcommand("reduce", "run one reduction and report the result");
    reduce_cmd->add_option("--variant", rargs.variant, "oracle64|shuffle32|half_tree|recurrence|single_pass|split");
    reduce_cmd->add_option("--n", rargs.n, "element count");
    reduce_cmd->add_option("--dist", rargs.dist, "normal|uniform|constant:<c>|integers:<lo>:<hi>");
    reduce_cmd->add_option("--seed", rargs.seed, "PRNG seed");
    reduce_cmd->add_option("--m", rargs.m, "fragment side (power of two >= 2)");
    reduce_cmd->add_option("--R", rargs.chain, "MMA chain length");
    reduce_cmd->add_option("--B", rargs.block, "block size in threads");
    reduce_cmd->add_option("--f", rargs.fraction, "split fraction");
    reduce_cmd->add_option("--input", rargs.input_file, "newline-separated decimals, overrides --dist");

    std::size_t cost_n = 0, cost_m = 4;
    unsigned cost_chain = 0;
    CLI::App* cost_cmd = app.add_subcommand("cost", "closed-form cost model queries");
    cost_cmd->add_option("--n", cost_n, "problem size")->required();
    cost_cmd->add_option("--m", cost_m, "fragment side");
    cost_cmd->add_option("--R", cost_chain, "chain length for steps_chained");

    SweepArgs sargs;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "B/R or f parameter sweep, CSV output");
    sweep_cmd->add_option("--variant", sargs.variant, "variant to sweep");
    sweep_cmd->add_option("--dist", sargs.dist, "input distribution");
    sweep_cmd->add_option("--n", sargs.n, "element count");
    sweep_cmd->add_option("--seed", sargs.seed, "PRNG seed");
    sweep_cmd->add_option("--m", sargs.m, "fragment side");
    sweep_cmd->add_option("--B-grid", sargs.block_grid, "block sizes, e.g. 32,64,128 or 32:1024:32");
    sweep_cmd->add_option("--R-grid", sargs.chain_grid, "chain lengths, e.g. 1,2,4 or 1:8:1");
    sweep_cmd->add_option("--f-grid", sargs.fraction_grid, "split fractions, e.g. 0:1:0.1");
    sweep_cmd->add_option("--out", sargs.out_path, "write CSV here instead of stdout");

    CurveArgs cargs;
    CLI::App* curve_cmd = app.add_subcommand("error-curve", "error vs n curves, CSV output");
    curve_cmd->add_option("--variant", cargs.variants, "variant(s), repeatable")->required();
    curve_cmd->add_option("--dist", cargs.dist, "input distribution");
    curve_cmd->add_option("--n-grid", cargs.n_grid, "sizes, e.g. 1024,32768,1048576");
    curve_cmd->add_option("--seed", cargs.seed, "PRNG seed");
    curve_cmd->add_option("--out", cargs.out_path, "write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (reduce_cmd->parsed()) return run_reduce(rargs);
        if (cost_cmd->parsed()) return run_cost(cost_n, cost_m,
                                                cost_chain ? std::optional<unsigned>(cost_chain)
                                                           : std::nullopt);
        if (sweep_cmd->parsed()) return run_sweep(sargs);
        if (curve_cmd->parsed()) return run_error_curve(cargs);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const InputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
