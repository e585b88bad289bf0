#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tcreduce/csv.hpp"
#include "tcreduce/harness.hpp"

using namespace tcreduce;

TEST_CASE("generate constant and uniform") {
    Distribution c{DistKind::constant, 0};
    c.c = 1.0;
    const auto ones = generate(c, 5);
    CHECK(ones == std::vector<float>(5, 1.0f));

    const auto u = generate({DistKind::uniform, 99}, 100000);
    for (float v : u) {
        CHECK(v >= 0.0f);
        CHECK(v < 1.0f);
    }
}

TEST_CASE("generate integers stays in bounds") {
    Distribution d{DistKind::integers, 4, -3, 7};
    for (float v : generate(d, 50000)) {
        CHECK(v >= -3.0f);
        CHECK(v <= 7.0f);
        CHECK(v == std::floor(v));
    }
}

TEST_CASE("generate normal has plausible moments") {
    const std::size_t n = 1000000;
    const auto x = generate({DistKind::normal, 7}, n);
    double mean = 0.0;
    for (float v : x) mean += v;
    mean /= static_cast<double>(n);
    CHECK(std::fabs(mean) < 5.0 / std::sqrt(static_cast<double>(n)));
    double var = 0.0;
    for (float v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    CHECK(std::fabs(var - 1.0) < 0.01);
}

TEST_CASE("generation is reproducible") {
    const Distribution d{DistKind::normal, 12345};
    CHECK(generate(d, 4096) == generate(d, 4096));
    // a different seed gives a different stream
    CHECK(generate(d, 64) != generate({DistKind::normal, 12346}, 64));
}

TEST_CASE("error_percent") {
    CHECK(*error_percent(10.0, 10.0) == 0.0);
    CHECK_THAT(*error_percent(10.1, 10.0), Catch::Matchers::WithinAbs(1.0, 1e-9));
    CHECK_FALSE(error_percent(1.0, 0.0).has_value());
}

TEST_CASE("sweep_br single point") {
    Distribution c{DistKind::constant, 0};
    c.c = 1.0;
    const auto recs = sweep_br(c, 16, Variant::recurrence, {32}, {1});
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].value == 16.0);
    CHECK(*recs[0].error_pct == 0.0);
    CHECK_FALSE(recs[0].overflow);
}

TEST_CASE("sweep_br grid shape and overflow behavior") {
    const Distribution normal{DistKind::normal, 0};
    const auto recs = sweep_br(normal, 1 << 20, Variant::recurrence, {32, 128}, {1, 2, 3, 4, 5});
    REQUIRE(recs.size() == 10);
    for (const auto& r : recs) CHECK_FALSE(r.overflow);

    const Distribution uniform{DistKind::uniform, 0};
    const auto over = sweep_br(uniform, 1 << 20, Variant::recurrence, {32, 128}, {1, 5});
    for (const auto& r : over) CHECK(r.overflow);

    CHECK_THROWS_AS(sweep_br(normal, 16, Variant::recurrence, {}, {1}), std::invalid_argument);
}

TEST_CASE("sweep_split endpoints match the pure paths") {
    const Distribution d{DistKind::uniform, 2};
    const std::size_t n = 16 * 4 * 50; // multiple of the B=128 block chunk
    const auto recs = sweep_split(d, n, {0.0, 1.0});
    REQUIRE(recs.size() == 2);
    const auto x = generate(d, n);
    CHECK(recs[0].value == shuffle32_reduce(x).value);
    ReductionConfig sp;
    sp.variant = Variant::single_pass;
    sp.R = 1;
    sp.B = 128;
    CHECK(recs[1].value == single_pass_reduce(x, sp).value);
}

TEST_CASE("sweep_split is exact on integer inputs") {
    const Distribution d{DistKind::integers, 1, 0, 9};
    const auto recs = sweep_split(d, 1 << 20, default_fraction_grid());
    REQUIRE(recs.size() == 11);
    for (const auto& r : recs) {
        REQUIRE(r.error_pct.has_value());
        CHECK(*r.error_pct == 0.0);
    }
}

TEST_CASE("error_curve uses the per-variant tuned configs") {
    CHECK(curve_config(Variant::single_pass).B == 128);
    CHECK(curve_config(Variant::single_pass).R == 4);
    CHECK(curve_config(Variant::recurrence).B == 32);
    CHECK(curve_config(Variant::recurrence).R == 5);

    Distribution c{DistKind::constant, 0};
    c.c = 1.0;
    const auto recs = error_curve(c, Variant::single_pass, {1024, 4096});
    REQUIRE(recs.size() == 2);
    for (const auto& r : recs) CHECK(*r.error_pct == 0.0);
}

TEST_CASE("csv output is stable and deterministic") {
    const Distribution d{DistKind::normal, 3};
    const auto recs = sweep_br(d, 4096, Variant::single_pass, {32, 64}, {1, 2});
    std::ostringstream a, b;
    write_csv(a, recs);
    write_csv(b, sweep_br(d, 4096, Variant::single_pass, {32, 64}, {1, 2}));
    const std::string text = a.str();
    CHECK(text == b.str());
    CHECK(text.rfind("variant,n,m,R,B,f,seed,dist,value,error_pct,overflow,"
                     "sim_steps,mma_count,atomic_count\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}

TEST_CASE("best_by_steps_per_element is deterministic under ties") {
    const Distribution d{DistKind::integers, 0, 0, 9};
    const auto recs = sweep_br(d, 1 << 16, Variant::recurrence, default_block_grid(),
                               default_chain_grid());
    REQUIRE(recs.size() == 48);
    const auto& best1 = best_by_steps_per_element(recs);
    const auto& best2 = best_by_steps_per_element(recs);
    CHECK(&best1 == &best2);
    for (const auto& r : recs)
        CHECK(static_cast<double>(best1.sim_steps) / best1.n <=
              static_cast<double>(r.sim_steps) / r.n);
}
