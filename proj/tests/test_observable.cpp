#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "suspension/observable.hpp"
#include "suspension/parser.hpp"

#include <cmath>

using namespace suspension;

namespace {

constexpr double kTol = 1e-12;

struct Fixture {
    GrowthSpec spec{GrowthConfig{}};
    RegionSet window2 = RegionSet::window(2, spec.truncation_k(), spec);
    Rectangle rect_a = parse_rectangle("C(0)[1..1]", spec);
    Rectangle rect_b = parse_rectangle("C(1)[1..2]", spec);
    Rectangle rect_c = parse_rectangle("C(2)[1..2]", spec);
    RegionSet a = RegionSet::of(rect_a);
    RegionSet b = RegionSet::of(rect_b);
    TowerPoint in_a = parse_point("0@1", spec);
    TowerPoint in_b = parse_point("10@2", spec);
    TowerPoint in_c = parse_point("110@1", spec);
};

}  // namespace

TEST_CASE("evaluation of counts with extra atoms") {
    Fixture fx;
    Observable n_a = Observable::count(fx.a);
    CountingMeasure empty;
    TowerPoint extra[] = {fx.in_a};
    CHECK(n_a.eval(empty, extra) == 1.0);
    TowerPoint other[] = {fx.in_b};
    CHECK(n_a.eval(empty, other) == 0.0);
}

TEST_CASE("first integral subtracts the compensator") {
    Fixture fx;
    SimpleFunction ind_a = SimpleFunction::indicator(fx.rect_a);
    Observable i = Observable::i1(ind_a);
    CountingMeasure nu = sample_poisson(fx.window2, fx.spec, StreamId(5));
    double mass = fx.rect_a.measure().to_double();
    CHECK(i.eval(nu) ==
          doctest::Approx(static_cast<double>(count(nu, fx.a)) - mass).epsilon(1e-14));
}

TEST_CASE("evaluation respects linearity") {
    Fixture fx;
    Observable f = Observable::count(fx.a);
    Observable g = Observable::count(fx.b);
    Observable combo = 2.0 * f + (-1.0) * g;
    for (std::uint64_t t = 0; t < 50; ++t) {
        CountingMeasure nu =
            sample_poisson(fx.window2, fx.spec, StreamId(6).child(stream_tag::kTrial, t));
        CHECK(combo.eval(nu) == doctest::Approx(2.0 * f.eval(nu) - g.eval(nu)).epsilon(1e-14));
    }
}

TEST_CASE("diff1 on primitives") {
    Fixture fx;
    double c = 0.0;
    Observable d_count = diff1(Observable::count(fx.a), fx.in_a);
    CHECK(d_count.is_constant(&c));
    CHECK(c == 1.0);
    Observable d_out = diff1(Observable::count(fx.a), fx.in_b);
    CHECK(d_out.is_constant(&c));
    CHECK(c == 0.0);
    Observable d_const = diff1(Observable::constant(3.5), fx.in_a);
    CHECK(d_const.is_constant(&c));
    CHECK(c == 0.0);
    SimpleFunction f({{0.75, fx.rect_a}, {-0.25, fx.rect_b}});
    Observable d_i1 = diff1(Observable::i1(f), fx.in_b);
    CHECK(d_i1.is_constant(&c));
    CHECK(c == doctest::Approx(-0.25).epsilon(1e-15));
}

TEST_CASE("second difference of a count vanishes") {
    Fixture fx;
    TowerPoint ys[] = {fx.in_a, fx.in_b};
    Observable d2 = diffn(Observable::count(fx.a), ys);
    double c = 1.0;
    CHECK(d2.is_constant(&c));
    CHECK(c == 0.0);
}

TEST_CASE("Leibniz rule for a disjoint product") {
    Fixture fx;
    SimpleFunction f = SimpleFunction::indicator(fx.rect_a);
    SimpleFunction g = SimpleFunction::indicator(fx.rect_b);
    Observable product = Observable::i1(f) * Observable::i1(g);
    // D^2 at (y1, y2) with disjoint f, g evaluates to f(y1)g(y2) + g(y1)f(y2)
    TowerPoint ys[] = {fx.in_a, fx.in_b};
    Observable d2 = diffn(product, ys);
    double c = 0.0;
    CHECK(d2.is_constant(&c));
    CHECK(c == doctest::Approx(1.0).epsilon(1e-15));
    TowerPoint same_side[] = {fx.in_a, fx.in_a};
    Observable d2_same = diffn(product, same_side);
    CHECK(d2_same.is_constant(&c));
    CHECK(c == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("chaos annihilation: D of a second-chaos product lives in the first chaos") {
    Fixture fx;
    SimpleFunction f = SimpleFunction::indicator(fx.rect_a);
    SimpleFunction g = SimpleFunction::indicator(fx.rect_b);
    Observable product = Observable::i1(f) * Observable::i1(g);
    Observable d = diff1(product, fx.in_a);  // = f(a) I1(g) + g(a) I1(f), f(a)=1, g(a)=0
    Observable expected = Observable::i1(g);
    CHECK(normal_form(d).same_as(normal_form(expected)));
    // and at a point outside both supports it vanishes
    TowerPoint outside = parse_point("1110@3", fx.spec);
    Observable d_out = diff1(product, outside);
    double c = 1.0;
    CHECK(d_out.is_constant(&c));
    CHECK(c == 0.0);
}

TEST_CASE("diffn is symmetric in its points") {
    Fixture fx;
    SimpleFunction f({{1.0, fx.rect_a}, {0.5, fx.rect_c}});
    SimpleFunction g = SimpleFunction::indicator(fx.rect_b);
    Observable big = Observable::i1(f) * Observable::i1(g) + 2.0 * Observable::count(fx.a);
    TowerPoint pts[] = {fx.in_a, fx.in_b, fx.in_c};
    TowerPoint perm_a[] = {pts[0], pts[1], pts[2]};
    TowerPoint perm_b[] = {pts[2], pts[0], pts[1]};
    TowerPoint perm_c[] = {pts[1], pts[2], pts[0]};
    Observable da = diffn(big, perm_a);
    Observable db = diffn(big, perm_b);
    Observable dc = diffn(big, perm_c);
    for (std::uint64_t t = 0; t < 20; ++t) {
        CountingMeasure nu =
            sample_poisson(fx.window2, fx.spec, StreamId(9).child(stream_tag::kTrial, t));
        double va = da.eval(nu);
        CHECK(std::abs(va - db.eval(nu)) <= kTol);
        CHECK(std::abs(va - dc.eval(nu)) <= kTol);
    }
}

TEST_CASE("almost-everywhere equal trees have identical differences") {
    Fixture fx;
    // N(A u B) and N(A) + N(B) for disjoint A, B agree pointwise, hence all
    // difference evaluations coincide.
    RegionSet ab = region_unite(fx.a, fx.b);
    Observable joined = Observable::count(ab);
    Observable split = Observable::count(fx.a) + Observable::count(fx.b);
    for (std::uint64_t t = 0; t < 30; ++t) {
        StreamId s = StreamId(10).child(stream_tag::kTrial, t);
        CountingMeasure nu = sample_poisson(fx.window2, fx.spec, s);
        TowerPoint y = sample_point_in(fx.rect_b, fx.spec, s.child(stream_tag::kPlace));
        CHECK(std::abs(joined.eval(nu) - split.eval(nu)) <= kTol);
        Observable d1 = diff1(joined, y);
        Observable d2 = diff1(split, y);
        CHECK(std::abs(d1.eval(nu) - d2.eval(nu)) <= kTol);
    }
}

TEST_CASE("normal forms identify rewrites") {
    Fixture fx;
    Observable x = Observable::count(fx.a);
    Observable y = Observable::i1(SimpleFunction::indicator(fx.rect_b));
    Observable lhs = (x + y) * (x - y);
    Observable rhs = x * x - y * y;
    CHECK(normal_form(lhs).same_as(normal_form(rhs)));
    Observable different = x * x - y;
    CHECK(!normal_form(lhs).same_as(normal_form(different)));
}

TEST_CASE("projection estimates") {
    Fixture fx;
    Observable n_a = Observable::count(fx.a);
    // P0 N(A) = mu(A)
    ProjectionEstimate p0 = project_n(n_a, {}, fx.window2, fx.spec, 20000, StreamId(11));
    double mass = fx.rect_a.measure().to_double();
    CHECK(std::abs(p0.estimate - mass) <= 3 * p0.standard_error);
    // P1 I1(f) at y is f(y) with zero variance
    SimpleFunction f({{2.0, fx.rect_a}, {1.0, fx.rect_b}});
    TowerPoint ys[] = {fx.in_b};
    ProjectionEstimate p1 = project_n(Observable::i1(f), ys, fx.window2, fx.spec, 100,
                                      StreamId(12));
    CHECK(p1.standard_error == 0.0);
    CHECK(p1.estimate == doctest::Approx(1.0).epsilon(1e-14));
    // Fock consistency: N(A) = mu(A) + I1(1_A) the projections P_1 = 1_A
    TowerPoint ya[] = {fx.in_a};
    ProjectionEstimate p1_count = project_n(n_a, ya, fx.window2, fx.spec, 100, StreamId(13));
    CHECK(p1_count.estimate == 1.0);
    CHECK(p1_count.standard_error == 0.0);
}

TEST_CASE("mecke harness on a quick pair") {
    Fixture fx;
    MeckeReport r = mecke_check(Observable::constant(1.0),
                                SimpleFunction::indicator(fx.rect_b), fx.window2, fx.spec,
                                20000, StreamId(14));
    double mass = fx.rect_b.measure().to_double();
    CHECK(std::abs(r.lhs - mass) <= 4 * r.se_lhs);
    CHECK(std::abs(r.rhs - mass) <= 4 * r.se_rhs);
    CHECK(std::abs(r.z) <= 4.0);
}

TEST_CASE("expectation of the annihilated product vanishes") {
    Fixture fx;
    SimpleFunction f = SimpleFunction::indicator(fx.rect_a);
    SimpleFunction g = SimpleFunction::indicator(fx.rect_b);
    Observable product = Observable::i1(f) * Observable::i1(g);
    Observable d = diff1(product, fx.in_a);
    ProjectionEstimate e = project_n(d, {}, fx.window2, fx.spec, 20000, StreamId(15));
    CHECK(std::abs(e.estimate) <= 3 * e.standard_error);
}
