#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "suspension/errors.hpp"
#include "suspension/json_io.hpp"
#include "suspension/point_process.hpp"
#include "suspension/stats.hpp"

#include <cmath>
#include <sstream>

using namespace suspension;

namespace {

GrowthSpec spec3() { return GrowthSpec(GrowthConfig{}); }

RegionSet window(const GrowthSpec& spec, int levels) {
    return RegionSet::window(levels, spec.truncation_k(), spec);
}

}  // namespace

TEST_CASE("sampling is deterministic in the stream") {
    GrowthSpec spec = spec3();
    RegionSet w = window(spec, 2);
    StreamId stream(7);
    CountingMeasure a = sample_poisson(w, spec, stream);
    CountingMeasure b = sample_poisson(w, spec, stream);
    REQUIRE(a.atoms.size() == b.atoms.size());
    for (std::size_t i = 0; i < a.atoms.size(); ++i) {
        CHECK(same_point(a.atoms[i], b.atoms[i]));
    }
    std::ostringstream sa, sb;
    write_configuration(sa, a);
    write_configuration(sb, b);
    CHECK(sa.str() == sb.str());
    CountingMeasure c = sample_poisson(w, spec, StreamId(8));
    std::ostringstream sc;
    write_configuration(sc, c);
    CHECK(sa.str() != sc.str());
}

TEST_CASE("atoms lie in the support region") {
    GrowthSpec spec = spec3();
    RegionSet w = window(spec, 2);
    for (std::uint64_t t = 0; t < 50; ++t) {
        CountingMeasure nu = sample_poisson(w, spec, StreamId(3).child(stream_tag::kTrial, t));
        for (const TowerPoint& p : nu.atoms) CHECK(w.contains(p));
        CHECK(nu.excluded_tail == w.tail_bound());
    }
}

TEST_CASE("empty region cannot be sampled") {
    GrowthSpec spec = spec3();
    CHECK_THROWS_AS(sample_poisson(RegionSet::empty(), spec, StreamId(1)), EmptyRegion);
}

TEST_CASE("count mean and variance on the unit window") {
    GrowthSpec spec = spec3();
    RegionSet w = window(spec, 1);
    const std::uint64_t trials = 20000;
    std::vector<double> counts(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        counts[t] = static_cast<double>(
            sample_poisson(w, spec, StreamId(17).child(stream_tag::kTrial, t)).atoms.size());
    }
    Summary s = summarize(counts);
    CHECK(std::abs(s.mean - 1.0) <= 3 * s.se_mean);
    CHECK(chi_square_poisson(tally(counts), 1.0).p_value > 0.001);
}

TEST_CASE("disjoint regions give uncorrelated counts") {
    GrowthSpec spec = spec3();
    RegionSet w = window(spec, 2);
    RegionSet a = RegionSet::of(make_rectangle(Column::column_class(0), 1, 1, spec));
    RegionSet b = RegionSet::of(make_rectangle(Column::column_class(1), 1, 2, spec));
    const std::uint64_t trials = 20000;
    std::vector<double> xs(trials), ys(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        CountingMeasure nu = sample_poisson(w, spec, StreamId(23).child(stream_tag::kTrial, t));
        xs[t] = static_cast<double>(count(nu, a));
        ys[t] = static_cast<double>(count(nu, b));
    }
    CovarianceEstimate cov = covariance(xs, ys);
    CHECK(std::abs(cov.covariance) <= 3 * cov.standard_error);
}

TEST_CASE("superposition identities") {
    GrowthSpec spec = spec3();
    RegionSet w = window(spec, 1);
    CountingMeasure a = sample_poisson(w, spec, StreamId(40));
    CountingMeasure b = sample_poisson(w, spec, StreamId(41));
    CountingMeasure ab = superpose(a, b);
    CHECK(ab.atoms.size() == a.atoms.size() + b.atoms.size());
    // additivity of counts over every part of the window
    for (const Rectangle& r : w.parts()) {
        RegionSet piece = RegionSet::of(r);
        CHECK(count(ab, piece) == count(a, piece) + count(b, piece));
    }
    CHECK_THROWS_AS(superpose(a, a), SeedCollision);
}

TEST_CASE("superposed counts follow the summed intensity") {
    GrowthSpec spec = spec3();
    RegionSet w = window(spec, 1);
    const std::uint64_t trials = 20000;
    std::vector<double> counts(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        StreamId base = StreamId(59).child(stream_tag::kTrial, t);
        CountingMeasure a = sample_poisson(w, spec, base.child(stream_tag::kSide, 0));
        CountingMeasure b = sample_poisson(w, spec, base.child(stream_tag::kSide, 1));
        counts[t] = static_cast<double>(superpose(a, b).atoms.size());
    }
    CHECK(chi_square_poisson(tally(counts), 2.0).p_value > 0.001);
}

TEST_CASE("thinning keeps marks below the level and nests") {
    GrowthSpec spec = spec3();
    RegionSet w = window(spec, 1);
    MarkedCountingMeasure nu = sample_poisson_marked(w, spec, StreamId(77));
    CountingMeasure all = thin(nu, 1.0);
    CHECK(all.atoms.size() == nu.atoms.size());  // c = 1 keeps everything
    CountingMeasure half = thin(nu, 0.5);
    CountingMeasure quarter = thin(nu, 0.25);
    CHECK(quarter.atoms.size() <= half.atoms.size());
    std::size_t j = 0;
    for (const TowerPoint& p : quarter.atoms) {
        bool found = false;
        while (j < half.atoms.size()) {
            if (same_point(half.atoms[j++], p)) {
                found = true;
                break;
            }
        }
        CHECK(found);
    }
    CHECK_THROWS_AS(thin(nu, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(thin(nu, 1.5), std::invalid_argument);
}

TEST_CASE("thinned counts are Poisson with scaled mass, halves independent") {
    GrowthSpec spec = spec3();
    RegionSet w = window(spec, 1);
    const std::uint64_t trials = 20000;
    std::vector<double> kept(trials), dropped(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        MarkedCountingMeasure nu =
            sample_poisson_marked(w, spec, StreamId(78).child(stream_tag::kTrial, t));
        auto [k, d] = thin_split(nu, 0.5);
        kept[t] = static_cast<double>(k.atoms.size());
        dropped[t] = static_cast<double>(d.atoms.size());
    }
    CHECK(chi_square_poisson(tally(kept), 0.5).p_value > 0.001);
    CovarianceEstimate cov = covariance(kept, dropped);
    CHECK(std::abs(cov.correlation) <= 3.0 / std::sqrt(static_cast<double>(trials)));
}

TEST_CASE("pushforward basics") {
    GrowthSpec spec = spec3();
    RegionSet w = window(spec, 2);
    CountingMeasure nu = sample_poisson(w, spec, StreamId(90));
    CountingMeasure same = pushforward(nu, 0, spec);
    REQUIRE(same.atoms.size() == nu.atoms.size());
    for (std::size_t i = 0; i < nu.atoms.size(); ++i) {
        CHECK(same_point(same.atoms[i], nu.atoms[i]));
    }
    CountingMeasure forward = pushforward(nu, 4, spec);
    CountingMeasure back = pushforward(forward, -4, spec);
    REQUIRE(back.atoms.size() == nu.atoms.size());
    for (std::size_t i = 0; i < nu.atoms.size(); ++i) {
        CHECK(same_point(back.atoms[i], nu.atoms[i]));
    }
}

TEST_CASE("pushforward transports counts equivariantly") {
    GrowthSpec spec = spec3();
    RegionSet w = window(spec, 2);
    RegionSet a = RegionSet::of(make_rectangle(Column::column_class(1), 1, 2, spec));
    RegionSet a_pre = region_preimage(a, spec);
    for (std::uint64_t t = 0; t < 200; ++t) {
        CountingMeasure nu = sample_poisson(w, spec, StreamId(91).child(stream_tag::kTrial, t));
        CountingMeasure moved = pushforward(nu, 1, spec);
        CHECK(count(moved, a) == count(nu, a_pre));
    }
}

TEST_CASE("collision diagnostic is quiet on healthy samples") {
    GrowthSpec spec = spec3();
    CountingMeasure nu = sample_poisson(window(spec, 2), spec, StreamId(101));
    CHECK(collision_count(nu) == 0);
}

TEST_CASE("marked configuration serializes marks") {
    GrowthSpec spec = spec3();
    MarkedCountingMeasure nu = sample_poisson_marked(window(spec, 1), spec, StreamId(7));
    std::ostringstream out;
    write_configuration(out, nu);
    std::string text = out.str();
    CHECK(text.find("\"type\":\"configuration\"") != std::string::npos);
    if (!nu.atoms.empty()) CHECK(text.find("\"mark\"") != std::string::npos);
}
