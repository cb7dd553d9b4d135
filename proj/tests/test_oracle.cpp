#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "suspension/errors.hpp"
#include "suspension/oracle.hpp"
#include "suspension/parser.hpp"

#include <cmath>

using namespace suspension;

namespace {

FiniteGround ground4() {
    FiniteGround g;
    g.lambda = {0.5, 1.0, 0.25, 2.0};
    g.count_cap = 20;
    return g;
}

}  // namespace

TEST_CASE("moments of single coordinates") {
    FiniteGround g = ground4();
    // E[N_1] = lambda_1
    ExactExpectation mean = exact_expect(GroundObservable::count_atom(1), g);
    CHECK(std::abs(mean.value - 1.0) <= mean.remainder_bound + 1e-12);
    // E[N_1^2] = lambda^2 + lambda
    GroundObservable n1 = GroundObservable::count_atom(1);
    ExactExpectation second = exact_expect(GroundObservable::product({n1, n1}), g);
    CHECK(std::abs(second.value - 2.0) <= second.remainder_bound + 1e-12);
    CHECK(second.remainder_bound < 1e-10);
}

TEST_CASE("independence of centered coordinates") {
    FiniteGround g = ground4();
    GroundObservable centered0 = GroundObservable::i1({1.0, 0.0, 0.0, 0.0});
    GroundObservable centered1 = GroundObservable::i1({0.0, 1.0, 0.0, 0.0});
    ExactExpectation prod =
        exact_expect(GroundObservable::product({centered0, centered1}), g);
    CHECK(std::abs(prod.value) <= prod.remainder_bound + 1e-12);
}

TEST_CASE("tail probability shrinks with the cap") {
    FiniteGround loose = ground4();
    FiniteGround tight = ground4();
    tight.count_cap = 10;
    CHECK(loose.tail_probability() < tight.tail_probability());
    CHECK(loose.tail_probability() < 1e-12);
}

TEST_CASE("enumeration limits") {
    FiniteGround big;
    big.lambda.assign(12, 1.0);
    big.count_cap = 20;
    CHECK_THROWS_AS(exact_expect(GroundObservable::constant(1.0), big), EnumerationTooLarge);
}

TEST_CASE("discrete Mecke identity") {
    FiniteGround g = ground4();
    // h(nu, x_i) = 1: both sides sum the masses
    MeckeOracleReport constant =
        oracle_mecke(GroundObservable::constant(1.0), {1.0, 1.0, 1.0, 1.0}, g);
    CHECK(constant.holds());
    CHECK(std::abs(constant.lhs - 3.75) <= constant.combined_bound() + 1e-12);

    // h(nu, x_i) = N_j 1{i != j}: the added atom never feeds back
    MeckeOracleReport cross =
        oracle_mecke(GroundObservable::count_atom(1), {1.0, 0.0, 1.0, 1.0}, g);
    CHECK(cross.holds());
    // lhs = E[N_1 (N_0 + N_2 + N_3)] = 1 * (0.5 + 0.25 + 2)
    CHECK(std::abs(cross.lhs - 2.75) <= cross.combined_bound() + 1e-12);

    // h(nu, x_i) = N_i: second moments appear
    MeckeOracleReport self = oracle_mecke(GroundObservable::count_atom(1), {0.0, 1.0, 0.0, 0.0}, g);
    CHECK(self.holds());
    CHECK(std::abs(self.lhs - 2.0) <= self.combined_bound() + 1e-12);  // E[N_1^2]
    CHECK(self.combined_bound() < 1e-10);
}

TEST_CASE("projection tables recover the Fock components") {
    FiniteGround g = ground4();
    // F = N({0,1}): P1 = indicator of the set, P2 = 0
    GroundObservable counter = GroundObservable::count(0b0011);
    auto p1 = oracle_projection(counter, 1, g);
    REQUIRE(p1.size() == 4);
    for (const ProjectionEntry& e : p1) {
        double want = (e.points[0] <= 1) ? 1.0 : 0.0;
        CHECK(std::abs(e.value - want) <= e.remainder_bound + 1e-10);
    }
    auto p2 = oracle_projection(counter, 2, g);
    for (const ProjectionEntry& e : p2) {
        CHECK(std::abs(e.value) <= e.remainder_bound + 1e-10);
    }
    // F = const: P0 = c, higher projections vanish
    auto p0 = oracle_projection(GroundObservable::constant(2.5), 0, g);
    REQUIRE(p0.size() == 1);
    CHECK(p0[0].value == doctest::Approx(2.5));
    auto p1c = oracle_projection(GroundObservable::constant(2.5), 1, g);
    for (const ProjectionEntry& e : p1c) CHECK(std::abs(e.value) <= e.remainder_bound + 1e-12);
}

TEST_CASE("projection of a disjoint product is the symmetrized tensor") {
    FiniteGround g = ground4();
    std::vector<double> f = {1.0, 0.0, 0.0, 0.0};
    std::vector<double> h = {0.0, 0.75, 0.0, 0.0};
    GroundObservable product =
        GroundObservable::product({GroundObservable::i1(f), GroundObservable::i1(h)});
    auto p1 = oracle_projection(product, 1, g);
    for (const ProjectionEntry& e : p1) {
        CHECK(std::abs(e.value) <= e.remainder_bound + 1e-10);
    }
    auto p2 = oracle_projection(product, 2, g);
    for (const ProjectionEntry& e : p2) {
        double want = f[e.points[0]] * h[e.points[1]] + h[e.points[0]] * f[e.points[1]];
        CHECK(std::abs(e.value - want) <= e.remainder_bound + 1e-9);
    }
}

TEST_CASE("chaos orthogonality and the isometry at order one") {
    FiniteGround g = ground4();
    // E[I1(f) * 1] = 0
    ExactExpectation centered = exact_expect(GroundObservable::i1({0.5, 1.5, 0.0, 0.0}), g);
    CHECK(std::abs(centered.value) <= centered.remainder_bound + 1e-12);

    // E[I1(f) I1(g)] = sum lambda_i f_i g_i
    std::vector<double> f = {1.0, 2.0, 0.0, 0.5};
    std::vector<double> h = {0.5, -1.0, 1.0, 0.25};
    ExactExpectation inner = exact_expect_product(GroundObservable::i1(f), {},
                                                  GroundObservable::i1(h), {}, g);
    double want = 0.0;
    for (std::size_t i = 0; i < 4; ++i) want += g.lambda[i] * f[i] * h[i];
    CHECK(std::abs(inner.value - want) <= inner.remainder_bound + 1e-10);

    // first vs second chaos with pairwise disjoint supports
    OrthogonalityReport r = oracle_chaos_orthogonality(
        GroundObservable::i1({0.0, 0.0, 1.0, 0.0}),
        GroundObservable::product({GroundObservable::i1({1.0, 0.0, 0.0, 0.0}),
                                   GroundObservable::i1({0.0, 1.0, 0.0, 0.0})}),
        g);
    CHECK(std::abs(r.inner_product) <= r.bound + 1e-10);
    for (std::size_t a = 0; a < r.diff_inner_products.size(); ++a) {
        CHECK(std::abs(r.diff_inner_products[a]) <= r.diff_bounds[a] + 1e-10);
    }
}

TEST_CASE("compiling tower observables onto ground cells") {
    GrowthSpec spec{GrowthConfig{}};
    FiniteGround g = ground4();
    Observable tower = parse_observable("N(C(0)[1..1]+C(1)[1..1]) * I1(2*C(2)[1..1])", spec);
    GroundObservable compiled = compile_to_ground(tower, g, spec);
    // evaluate both on an explicit configuration: counts (1, 0, 3, 2)
    int counts[] = {1, 0, 3, 2};
    double i1_value = 2.0 * (3 - g.lambda[2]);
    double want = 1.0 * i1_value;
    CHECK(compiled.eval(counts, {}, g) == doctest::Approx(want).epsilon(1e-14));

    // straddling regions are rejected: level 2 of class 1 is not a cell
    Observable bad = parse_observable("N(C(1)[1..2])", spec);
    CHECK_THROWS_AS(compile_to_ground(bad, g, spec), std::invalid_argument);
}

TEST_CASE("oracle matches Monte Carlo projections across the bridge") {
    GrowthSpec spec{GrowthConfig{}};
    // ground masses equal to the cell measures of classes 0..3
    FiniteGround g;
    g.lambda = {0.5, 0.25, 0.125, 0.0625};
    g.count_cap = 20;
    Observable tower = parse_observable("I1(1*C(0)[1..1]) * I1(1*C(1)[1..1])", spec);
    GroundObservable compiled = compile_to_ground(tower, g, spec);
    auto table = oracle_projection(compiled, 2, g);
    // the tower-side Monte Carlo estimate for P2 at cells (0, 1)
    RegionSet cells = RegionSet::from_parts(
        {make_rectangle(Column::column_class(0), 1, 1, spec),
         make_rectangle(Column::column_class(1), 1, 1, spec),
         make_rectangle(Column::column_class(2), 1, 1, spec),
         make_rectangle(Column::column_class(3), 1, 1, spec)});
    TowerPoint ys[] = {parse_point("0@1", spec), parse_point("10@1", spec)};
    ProjectionEstimate mc = project_n(tower, ys, cells, spec, 4000, StreamId(21));
    for (const ProjectionEntry& e : table) {
        if (e.points == std::vector<std::size_t>{0, 1}) {
            CHECK(std::abs(mc.estimate - e.value) <=
                  3 * mc.standard_error + e.remainder_bound + 1e-9);
        }
    }
}
