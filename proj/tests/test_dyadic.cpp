#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "suspension/dyadic.hpp"
#include "suspension/rng.hpp"

#include <cmath>

using namespace suspension;

TEST_CASE("construction and normalization") {
    CHECK(Dyadic(0).is_zero());
    CHECK(Dyadic(BigInt(6), 1) == Dyadic(3));
    CHECK(Dyadic(BigInt(4), 2) == Dyadic(1));
    CHECK(Dyadic::pow2(-3) == Dyadic(BigInt(1), 3));
    CHECK(Dyadic::pow2(4) == Dyadic(16));
}

TEST_CASE("arithmetic") {
    Dyadic half = Dyadic::pow2(-1);
    Dyadic quarter = Dyadic::pow2(-2);
    CHECK(half + quarter == Dyadic(BigInt(3), 2));
    CHECK(half - half == Dyadic(0));
    CHECK(half * half == quarter);
    CHECK((-half).is_negative());
    CHECK(half.mul_pow2(-3) == Dyadic::pow2(-4));
    CHECK(Dyadic(3).mul_pow2(2) == Dyadic(12));
    CHECK(half.pow(3) == Dyadic::pow2(-3));
    CHECK(Dyadic(3).pow(0) == Dyadic(1));
}

TEST_CASE("ordering") {
    CHECK(Dyadic::pow2(-2) < Dyadic::pow2(-1));
    CHECK(Dyadic(-1) < Dyadic::pow2(-5));
    CHECK(Dyadic(BigInt(7), 3) > Dyadic(BigInt(3), 2));
}

TEST_CASE("string round trip") {
    CHECK(Dyadic(BigInt(3), 2).str() == "3/2^2");
    CHECK(Dyadic(5).str() == "5");
    CHECK(Dyadic::parse("3/2^2") == Dyadic(BigInt(3), 2));
    CHECK(Dyadic::parse("-7") == Dyadic(-7));
    CHECK(Dyadic::parse(Dyadic(BigInt(-11), 7).str()) == Dyadic(BigInt(-11), 7));
    CHECK_THROWS(Dyadic::parse("1/3"));
}

TEST_CASE("double conversion agrees with rational value") {
    Rng rng(2024);
    for (int i = 0; i < 200; ++i) {
        auto num = static_cast<std::int64_t>(rng.next() >> 20) - (1ll << 43);
        auto exp = static_cast<unsigned>(rng.below(40));
        Dyadic d(BigInt(num), exp);
        double want = std::ldexp(static_cast<double>(num), -static_cast<int>(exp));
        CHECK(d.to_double() == doctest::Approx(want).epsilon(1e-15));
    }
}

TEST_CASE("sum of random dyadics matches double arithmetic") {
    Rng rng(7);
    Dyadic total;
    double approx = 0.0;
    for (int i = 0; i < 100; ++i) {
        auto num = static_cast<std::int64_t>(rng.below(1 << 20)) - (1 << 19);
        auto exp = static_cast<unsigned>(rng.below(24));
        Dyadic d(BigInt(num), exp);
        total += d;
        approx += d.to_double();
    }
    CHECK(total.to_double() == doctest::Approx(approx).epsilon(1e-12));
}
