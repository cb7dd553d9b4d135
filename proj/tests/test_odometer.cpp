#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "suspension/errors.hpp"
#include "suspension/tower.hpp"

using namespace suspension;

namespace {
GrowthSpec spec3() { return GrowthSpec(GrowthConfig{}); }
}  // namespace

TEST_CASE("growth tables for m = 3") {
    GrowthSpec spec = spec3();
    CHECK(spec.n(0) == 1);
    CHECK(spec.n(1) == 3);
    CHECK(spec.n(4) == 81);
    CHECK(spec.h(0) == 1);
    CHECK(spec.h(1) == 2);
    CHECK(spec.h(2) == 5);
    CHECK(spec.h(3) == 14);
    for (std::size_t k = 0; k + 1 < 40; ++k) {
        CHECK(spec.h(k) < spec.h(k + 1));  // strictly increasing heights
        CHECK(spec.h(k) >= 1);
    }
}

TEST_CASE("growth validation") {
    CHECK_THROWS_AS(GrowthSpec(GrowthConfig{{2}, true, 64, 30}), std::invalid_argument);
    CHECK_THROWS_AS(GrowthSpec(GrowthConfig{{}, true, 64, 30}), std::invalid_argument);
    GrowthSpec mixed(GrowthConfig{{4, 3, 5}, true, 64, 30});
    CHECK(mixed.n(1) == 4);
    CHECK(mixed.n(2) == 12);
    CHECK(mixed.n(3) == 60);
    CHECK(mixed.n(4) == 300);  // repeat-last rule
    GrowthSpec norep(GrowthConfig{{3}, false, 8, 4});
    CHECK_THROWS_AS(norep.n(3), OutOfRange);
}

TEST_CASE("successor flips the leading ones") {
    LazyWord w0 = LazyWord::parse("0110", 64);
    LazyWord s0 = w0.successor();
    CHECK(s0.bit(0));
    CHECK(s0.bit(1));
    CHECK(s0.bit(2));
    CHECK(!s0.bit(3));

    LazyWord w1 = LazyWord::parse("1101", 64);
    LazyWord s1 = w1.successor();
    CHECK(!s1.bit(0));
    CHECK(!s1.bit(1));
    CHECK(s1.bit(2));
    CHECK(s1.bit(3));
}

TEST_CASE("successor and predecessor invert each other") {
    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        LazyWord w = LazyWord::random({}, rng.next(), 64);
        LazyWord round = w.successor().predecessor();
        CHECK(LazyWord::same_word(w, round));
        LazyWord round2 = w.predecessor().successor();
        CHECK(LazyWord::same_word(w, round2));
    }
}

TEST_CASE("first p bits cycle with period 2^p under succ") {
    // brute-force odometer cycle: after 2^p steps the p-bit prefix returns
    const int p = 5;
    for (std::uint64_t start : {0ull, 7ull, 19ull, 31ull}) {
        std::vector<std::uint8_t> bits(p);
        for (int i = 0; i < p; ++i) bits[static_cast<std::size_t>(i)] = (start >> i) & 1;
        LazyWord w = LazyWord::constant(bits, 64);
        LazyWord cur = w;
        for (int step = 0; step < (1 << p); ++step) {
            if (step > 0) {
                bool same = true;
                for (int i = 0; i < p; ++i) same = same && cur.bit(i) == w.bit(i);
                CHECK(!same);  // strictly before 2^p the prefix differs
            }
            cur = cur.successor();
        }
        for (int i = 0; i < p; ++i) CHECK(cur.bit(i) == w.bit(i));
    }
}

TEST_CASE("cap exceeded instead of fabricated bits") {
    LazyWord ones = LazyWord::parse("11111111", 8);
    CHECK_THROWS_AS(ones.first_zero(), CapExceeded);
    LazyWord zeros = LazyWord::parse("000", 3);
    CHECK_THROWS_AS(zeros.first_one(), CapExceeded);
    CHECK_THROWS_AS(zeros.bit(5), CapExceeded);
}

TEST_CASE("heights from the first zero bit") {
    GrowthSpec spec = spec3();
    CHECK(height_of(LazyWord::parse("0", 64), spec) == 1);
    CHECK(height_of(LazyWord::parse("10", 64), spec) == 2);
    CHECK(height_of(LazyWord::parse("1110", 64), spec) == 14);
}

TEST_CASE("tower map cases") {
    GrowthSpec spec = spec3();
    // height 1: wraps immediately and increments the word
    TowerPoint p0{LazyWord::parse("01", 64), 1};
    TowerPoint t0 = apply_T(p0, spec);
    CHECK(t0.level == 1);
    CHECK(t0.word.bit(0));
    CHECK(t0.word.bit(1));
    // interior climb in a height-2 column
    TowerPoint p1{LazyWord::parse("10", 64), 1};
    TowerPoint t1 = apply_T(p1, spec);
    CHECK(t1.level == 2);
    CHECK(LazyWord::same_word(t1.word, p1.word));
}

TEST_CASE("bijectivity on random points") {
    GrowthSpec spec = spec3();
    Rng rng(99);
    for (int i = 0; i < 10000; ++i) {
        LazyWord w = LazyWord::random({}, rng.next(), 64);
        BigInt h = height_of(w, spec);
        BigInt level = 1 + BigInt(rng.below(h.convert_to<std::uint64_t>()));
        TowerPoint p{w, level};
        CHECK(same_point(apply_T_inv(apply_T(p, spec), spec), p));
        CHECK(same_point(apply_T(apply_T_inv(p, spec), spec), p));
    }
}

TEST_CASE("powers of the tower map compose") {
    GrowthSpec spec = spec3();
    TowerPoint p{LazyWord::parse("110", 64), 2};
    TowerPoint q = apply_T_pow(p, 7, spec);
    TowerPoint manual = p;
    for (int i = 0; i < 7; ++i) manual = apply_T(manual, spec);
    CHECK(same_point(q, manual));
    CHECK(same_point(apply_T_pow(q, -7, spec), p));
}
