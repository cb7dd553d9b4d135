#include "suspension/acceptance.hpp"

#include "suspension/oracle.hpp"
#include "suspension/parallel.hpp"
#include "suspension/parser.hpp"
#include "suspension/riesz.hpp"
#include "suspension/stats.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

namespace suspension {

namespace {

constexpr double kExactTol = 1e-12;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

GrowthSpec default_spec() { return GrowthSpec(GrowthConfig{}); }

FiniteGround default_ground() {
    FiniteGround ground;
    ground.lambda = {0.5, 0.5, 0.25, 0.75};
    ground.count_cap = 20;
    return ground;
}

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "FAILED " << what << "; ";
        }
    }
    void note(const std::string& what) { detail << what << "; "; }
};

// 1. sigma-hat(n_j) = 1/2 exactly for j = 0..8.
CriterionResult riesz_coefficient_check(std::uint64_t, unsigned) {
    GrowthSpec spec = default_spec();
    Check c;
    const Dyadic half(BigInt(1), 1);
    for (int j = 0; j <= 8; ++j) {
        Dyadic v = coeff_at(spec, spec.n(static_cast<std::size_t>(j)));
        c.require(v == half, "coeff_at(n_" + std::to_string(j) + ") = " + v.str());
    }
    c.note("coeff_at(n_j) = 1/2 for j=0..8");
    return {1, "riesz coefficients at n_j", c.pass, c.detail.str(), 0.0};
}

// 2. Dissociation at J=12 and partial product vs closed form.
CriterionResult dissociation_criterion(std::uint64_t, unsigned) {
    GrowthSpec spec = default_spec();
    Check c;
    DissociationReport report = dissociation_check(spec, 12);
    c.require(report.dissociated(), "collision-free eps enumeration");
    c.require(report.vectors == 531441, "3^12 vectors scanned");
    RieszCoefficients partial = partial_coeffs(spec, 12);
    std::size_t mismatches = 0;
    for (const auto& [freq, coeff] : partial.coeffs) {
        if (!(coeff_at(spec, freq) == coeff)) ++mismatches;
    }
    c.require(mismatches == 0, "partial_coeffs == coeff_at on all frequencies");
    c.note(std::to_string(partial.coeffs.size()) + " frequencies cross-checked");
    return {2, "dissociation and coefficient closed form", c.pass, c.detail.str(), 0.0};
}

// 3. Window mass formula and Poisson(1) sampling statistics.
CriterionResult window_mass_criterion(std::uint64_t seed, unsigned threads) {
    GrowthSpec spec = default_spec();
    Check c;
    RegionSet window1 = RegionSet::window(1, spec.truncation_k(), spec);
    Dyadic mass = window1.mass() + window1.tail_bound();
    c.require(mass == Dyadic(1), "mu(X_1) = 1 exactly, got " + mass.str());

    const std::uint64_t trials = 100000;
    StreamId stream = StreamId(seed).child(stream_tag::kAux, 3);
    std::vector<double> counts(trials);
    run_trials(trials, threads, [&](std::uint64_t t) {
        CountingMeasure nu = sample_poisson(window1, spec, stream.child(stream_tag::kTrial, t));
        counts[t] = static_cast<double>(nu.atoms.size());
    });
    Summary s = summarize(counts);
    c.require(std::abs(s.mean - 1.0) <= 3 * s.se_mean,
              "count mean " + fmt(s.mean) + " within 3 SE of 1");
    // SE of the sample variance via the fourth central moment.
    double m4 = 0.0;
    for (double v : counts) m4 += std::pow(v - s.mean, 4);
    m4 /= static_cast<double>(trials);
    double se_var = std::sqrt((m4 - s.variance * s.variance) / static_cast<double>(trials));
    c.require(std::abs(s.variance - 1.0) <= 3 * se_var,
              "count variance " + fmt(s.variance) + " within 3 SE of 1");
    ChiSquareResult chi = chi_square_poisson(tally(counts), 1.0);
    c.require(chi.p_value > 0.001, "chi-square GOF p = " + fmt(chi.p_value) + " > 0.001");
    c.note("mean " + fmt(s.mean) + ", var " + fmt(s.variance) + ", p " + fmt(chi.p_value));
    return {3, "window mass and Poisson statistics", c.pass, c.detail.str(), 0.0};
}

// 4. Mecke's identity: three Monte Carlo pairs plus the exact oracle.
CriterionResult mecke_criterion(std::uint64_t seed, unsigned threads) {
    GrowthSpec spec = default_spec();
    Check c;
    RegionSet window2 = RegionSet::window(2, spec.truncation_k(), spec);
    Rectangle rect_a = parse_rectangle("C(0)[1..1]", spec);
    Rectangle rect_b = parse_rectangle("C(1)[1..2]", spec);
    Observable one = Observable::constant(1.0);
    Observable count_a = Observable::count(RegionSet::of(rect_a));
    SimpleFunction ind_a = SimpleFunction::indicator(rect_a);
    SimpleFunction ind_b = SimpleFunction::indicator(rect_b);

    const std::uint64_t trials = 100000;
    StreamId stream = StreamId(seed).child(stream_tag::kAux, 4);
    struct Pair {
        const char* name;
        const Observable& g;
        const SimpleFunction& f;
    };
    const Pair pairs[] = {{"g=1,f=1_B", one, ind_b},
                          {"g=N(A),f=1_B", count_a, ind_b},
                          {"g=N(A),f=1_A", count_a, ind_a}};
    int index = 0;
    for (const Pair& p : pairs) {
        MeckeReport r = mecke_check(p.g, p.f, window2, spec, trials,
                                    stream.child(stream_tag::kSide, index), threads);
        c.require(std::abs(r.z) <= 3.0, std::string(p.name) + " z = " + fmt(r.z));
        c.note(std::string(p.name) + ": lhs " + fmt(r.lhs) + " rhs " + fmt(r.rhs) + " z " +
               fmt(r.z));
        ++index;
    }

    FiniteGround ground = default_ground();
    GroundObservable g_one = GroundObservable::constant(1.0);
    GroundObservable g_count01 = GroundObservable::count(0b0011);
    std::vector<double> f_b = {0.0, 0.0, 1.0, 1.0};
    std::vector<double> f_a = {1.0, 1.0, 0.0, 0.0};
    const MeckeOracleReport oracle_reports[] = {
        oracle_mecke(g_one, f_b, ground),
        oracle_mecke(g_count01, f_b, ground),   // disjoint supports
        oracle_mecke(g_count01, f_a, ground)};  // same support
    for (const MeckeOracleReport& r : oracle_reports) {
        c.require(r.holds(), "oracle identity within truncation bound " +
                                  fmt(r.combined_bound()));
        c.require(r.combined_bound() < 1e-10, "oracle truncation bound < 1e-10");
    }
    c.note("oracle diffs " + fmt(oracle_reports[0].difference()) + ", " +
           fmt(oracle_reports[1].difference()) + ", " + fmt(oracle_reports[2].difference()));
    return {4, "Mecke identity (Monte Carlo + oracle)", c.pass, c.detail.str(), 0.0};
}

// 5. Fock structure: first difference exactness and second projections.
CriterionResult fock_criterion(std::uint64_t seed, unsigned threads) {
    GrowthSpec spec = default_spec();
    Check c;
    RegionSet window2 = RegionSet::window(2, spec.truncation_k(), spec);
    Rectangle rect_a = parse_rectangle("C(0)[1..1]", spec);
    Rectangle rect_b = parse_rectangle("C(1)[1..2]", spec);
    StreamId stream = StreamId(seed).child(stream_tag::kAux, 5);

    // diff1(I1(f), y) is the constant f(y), for random f, y and nu.
    std::size_t diff_failures = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        StreamId it = stream.child(stream_tag::kTrial, i);
        Rng rng = it.child(stream_tag::kAux).rng();
        SimpleFunction f({{2.0 * rng.uniform() - 1.0, rect_a},
                          {2.0 * rng.uniform() - 1.0, rect_b}});
        const Rectangle& home = rng.bit() ? rect_a : rect_b;
        TowerPoint y = sample_point_in(home, spec, it.child(stream_tag::kPlace));
        CountingMeasure nu = sample_poisson(window2, spec, it.child(stream_tag::kSide));
        Observable d = diff1(Observable::i1(f), y);
        double constant_value = 0.0;
        bool is_const = d.is_constant(&constant_value);
        double want = f.value_at(y);
        if (!is_const || std::abs(constant_value - want) > kExactTol ||
            std::abs(d.eval(nu) - want) > kExactTol) {
            ++diff_failures;
        }
    }
    c.require(diff_failures == 0, "diff1(I1(f), y) = f(y) over 1000 random draws");

    // P2 of a disjoint product: oracle table vs f x g + g x f.
    FiniteGround ground = default_ground();
    GroundObservable product = GroundObservable::product(
        {GroundObservable::i1({1.0, 0.0, 0.0, 0.0}), GroundObservable::i1({0.0, 1.0, 0.0, 0.0})});
    auto table = oracle_projection(product, 2, ground);
    std::size_t bad_entries = 0;
    for (const ProjectionEntry& e : table) {
        auto f_at = [](std::size_t i) { return i == 0 ? 1.0 : 0.0; };
        auto g_at = [](std::size_t i) { return i == 1 ? 1.0 : 0.0; };
        double want = f_at(e.points[0]) * g_at(e.points[1]) + g_at(e.points[0]) * f_at(e.points[1]);
        if (std::abs(e.value - want) > std::max(e.remainder_bound, 1e-10)) ++bad_entries;
    }
    c.require(bad_entries == 0, "oracle P2(I1(f) I1(g)) = f x g + g x f");

    // Monte Carlo P2 at (y1, y2) in A x B: the integrand is constant, so the
    // estimate is exact.
    Observable tower_product =
        Observable::i1(SimpleFunction::indicator(rect_a)) *
        Observable::i1(SimpleFunction::indicator(rect_b));
    TowerPoint y1 = parse_point("0@1", spec);
    TowerPoint y2 = parse_point("10@2", spec);
    TowerPoint ys[] = {y1, y2};
    ProjectionEstimate p2 = project_n(tower_product, ys, window2, spec, 2000,
                                      stream.child(stream_tag::kSide, 1), threads);
    c.require(std::abs(p2.estimate - 1.0) <= std::max(3 * p2.standard_error, kExactTol),
              "MC P2 estimate " + fmt(p2.estimate) + " = 1");

    // P_n(N(A)) vanishes for n >= 2, exactly.
    Observable count_a = Observable::count(RegionSet::of(rect_a));
    Observable d2 = diffn(count_a, ys);
    double d2_value = 1.0;
    c.require(d2.is_constant(&d2_value) && d2_value == 0.0, "D^2 N(A) is the zero constant");
    ProjectionEstimate p2_count = project_n(count_a, ys, window2, spec, 500,
                                            stream.child(stream_tag::kSide, 2), threads);
    c.require(p2_count.estimate == 0.0 && p2_count.standard_error == 0.0,
              "P2(N(A)) = 0 exactly");
    c.note("1000 difference draws, " + std::to_string(table.size()) + " oracle P2 entries");
    return {5, "Fock structure (differences and projections)", c.pass, c.detail.str(), 0.0};
}

// 6. Chaos orthogonality through the exact oracle.
CriterionResult chaos_orthogonality_criterion(std::uint64_t, unsigned) {
    FiniteGround ground = default_ground();
    Check c;
    GroundObservable first = GroundObservable::i1({0.0, 0.0, 1.0, 0.0});
    GroundObservable second = GroundObservable::product(
        {GroundObservable::i1({1.0, 0.0, 0.0, 0.0}), GroundObservable::i1({0.0, 1.0, 0.0, 0.0})});
    OrthogonalityReport r = oracle_chaos_orthogonality(first, second, ground);
    c.require(std::abs(r.inner_product) <= std::max(r.bound, 1e-10),
              "E[I1(h) I1(f) I1(g)] = " + fmt(r.inner_product));
    for (std::size_t a = 0; a < r.diff_inner_products.size(); ++a) {
        c.require(std::abs(r.diff_inner_products[a]) <= std::max(r.diff_bounds[a], 1e-10),
                  "E[(D_a G) G] = " + fmt(r.diff_inner_products[a]) + " at atom " +
                      std::to_string(a));
    }
    c.note("inner " + fmt(r.inner_product) + ", bound " + fmt(r.bound));
    return {6, "chaos orthogonality oracle", c.pass, c.detail.str(), 0.0};
}

// 7. Exact measure preservation and pushforward equivariance.
CriterionResult measure_preservation_criterion(std::uint64_t seed, unsigned threads) {
    GrowthSpec spec = default_spec();
    Check c;
    StreamId stream = StreamId(seed).child(stream_tag::kAux, 7);

    Rng rng = stream.child(stream_tag::kAux).rng();
    std::size_t mismatches = 0;
    for (int i = 0; i < 100; ++i) {
        Column col;
        if (rng.bit()) {
            col = Column::column_class(static_cast<int>(rng.below(9)));
        } else {
            std::vector<std::uint8_t> bits(1 + rng.below(8));
            for (auto& b : bits) b = rng.bit() ? 1 : 0;
            col.bits = std::move(bits);
        }
        std::uint64_t top = min_height(col, spec).convert_to<std::uint64_t>();
        std::uint64_t lo = 1 + rng.below(top);
        std::uint64_t hi = lo + rng.below(top - lo + 1);
        Rectangle r = make_rectangle(col, BigInt(lo), BigInt(hi), spec);
        RegionSet pre = rect_preimage(r, spec);
        if (!(pre.mass() + pre.tail_bound() == r.measure())) ++mismatches;
    }
    c.require(mismatches == 0, "preimage mass exact for 100 random rectangles");

    // Pushforward then inverse returns identical configurations.
    RegionSet window2 = RegionSet::window(2, spec.truncation_k(), spec);
    std::size_t roundtrip_failures = 0;
    const std::int64_t step_choices[] = {1, 5, 12};
    for (std::uint64_t t = 0; t < 200; ++t) {
        CountingMeasure nu = sample_poisson(window2, spec, stream.child(stream_tag::kTrial, t));
        std::int64_t steps = step_choices[t % 3];
        CountingMeasure forward = pushforward(nu, steps, spec);
        CountingMeasure back = pushforward(forward, -steps, spec);
        if (back.atoms.size() != nu.atoms.size()) {
            ++roundtrip_failures;
            continue;
        }
        for (std::size_t i = 0; i < nu.atoms.size(); ++i) {
            if (!same_point(back.atoms[i], nu.atoms[i])) {
                ++roundtrip_failures;
                break;
            }
        }
    }
    c.require(roundtrip_failures == 0, "pushforward round trips over 200 configurations");

    // Counts on the transported window stay Poisson with unchanged mass.
    RegionSet transported = window2;
    for (int s = 0; s < 3; ++s) transported = region_image(transported, spec);
    const std::uint64_t trials = 10000;
    std::vector<double> counts(trials);
    StreamId mc = stream.child(stream_tag::kSide);
    run_trials(trials, threads, [&](std::uint64_t t) {
        CountingMeasure nu = sample_poisson(window2, spec, mc.child(stream_tag::kTrial, t));
        CountingMeasure moved = pushforward(nu, 3, spec, &transported);
        counts[t] = static_cast<double>(count(moved, transported));
    });
    Summary s = summarize(counts);
    double mass = window2.mass().to_double();
    c.require(std::abs(s.mean - mass) <= 3 * s.se_mean,
              "transported count mean " + fmt(s.mean) + " within 3 SE of " + fmt(mass));
    ChiSquareResult chi = chi_square_poisson(tally(counts), mass);
    c.require(chi.p_value > 0.001, "transported counts GOF p = " + fmt(chi.p_value));
    c.note("transported mean " + fmt(s.mean) + ", p " + fmt(chi.p_value));
    return {7, "measure preservation and equivariance", c.pass, c.detail.str(), 0.0};
}

// 8. Superposition and thinning laws.
CriterionResult superposition_thinning_criterion(std::uint64_t seed, unsigned threads) {
    GrowthSpec spec = default_spec();
    Check c;
    RegionSet window1 = RegionSet::window(1, spec.truncation_k(), spec);
    StreamId stream = StreamId(seed).child(stream_tag::kAux, 8);
    const std::uint64_t trials = 100000;

    std::vector<double> superposed(trials);
    run_trials(trials, threads, [&](std::uint64_t t) {
        StreamId base = stream.child(stream_tag::kTrial, t);
        CountingMeasure a = sample_poisson(window1, spec, base.child(stream_tag::kSide, 0));
        CountingMeasure b = sample_poisson(window1, spec, base.child(stream_tag::kSide, 1));
        superposed[t] = static_cast<double>(superpose(a, b).atoms.size());
    });
    ChiSquareResult chi2 = chi_square_poisson(tally(superposed), 2.0);
    c.require(chi2.p_value > 0.001, "superposed counts Poisson(2), p = " + fmt(chi2.p_value));

    for (double thin_c : {0.25, 0.5}) {
        std::vector<double> kept(trials), dropped(trials);
        StreamId sub = stream.child(stream_tag::kSide, thin_c == 0.25 ? 2 : 3);
        run_trials(trials, threads, [&](std::uint64_t t) {
            MarkedCountingMeasure nu =
                sample_poisson_marked(window1, spec, sub.child(stream_tag::kTrial, t));
            auto [keep, drop] = thin_split(nu, thin_c);
            kept[t] = static_cast<double>(keep.atoms.size());
            dropped[t] = static_cast<double>(drop.atoms.size());
        });
        ChiSquareResult chi = chi_square_poisson(tally(kept), thin_c);
        c.require(chi.p_value > 0.001,
                  "thinned counts Poisson(" + fmt(thin_c) + "), p = " + fmt(chi.p_value));
        CovarianceEstimate cov = covariance(kept, dropped);
        double corr_limit = 3.0 / std::sqrt(static_cast<double>(trials));
        c.require(std::abs(cov.correlation) <= corr_limit,
                  "kept/dropped correlation " + fmt(cov.correlation) + " within " +
                      fmt(corr_limit));
    }

    // Nesting: thin(nu, c1) is a sub-multiset of thin(nu, c2) for c1 <= c2.
    std::size_t nesting_failures = 0;
    for (std::uint64_t t = 0; t < 500; ++t) {
        MarkedCountingMeasure nu = sample_poisson_marked(
            window1, spec, stream.child(stream_tag::kSide, 4).child(stream_tag::kTrial, t));
        CountingMeasure small = thin(nu, 0.25);
        CountingMeasure large = thin(nu, 0.5);
        std::size_t j = 0;
        for (const TowerPoint& p : small.atoms) {
            while (j < large.atoms.size() && !same_point(large.atoms[j], p)) ++j;
            if (j == large.atoms.size()) {
                ++nesting_failures;
                break;
            }
            ++j;
        }
    }
    c.require(nesting_failures == 0, "thinning nests exactly over 500 configurations");
    return {8, "superposition and thinning", c.pass, c.detail.str(), 0.0};
}

// 9. Non-mixing witness: exact autocorrelation along n_j vs Monte Carlo.
//
// Golden values (exact, derived by this module; see tests/golden/): with
// A = window(1) (the tower floor, mu(A) = 1) and m = 3,
// mu(A ∩ T^{-n_j} A) = 1/2 exactly for every j, matching the spectral
// witness sigma-hat(n_j) = 1/2. The normalized sequence therefore stays at
// 0.5, bounded away from the mixing limit 0; the frozen threshold is 0.4.
CriterionResult autocorrelation_criterion(std::uint64_t seed, unsigned threads) {
    GrowthSpec spec = default_spec();
    Check c;
    RegionSet floor = RegionSet::window(1, spec.truncation_k(), spec);
    StreamId stream = StreamId(seed).child(stream_tag::kAux, 9);
    const Dyadic golden_value(BigInt(1), 1);  // 1/2
    const double threshold = 0.4;

    std::vector<std::uint64_t> lags = nj_lags(spec, 4);
    const std::uint64_t trials = 10000;
    for (std::size_t j = 0; j < lags.size(); ++j) {
        Autocorrelation ac = autocorr_exact(floor, lags[j], spec);
        Dyadic diff = ac.value - golden_value;
        if (diff.is_negative()) diff = -diff;
        c.require(!(ac.error_bound < diff),
                  "exact autocorr at lag " + std::to_string(lags[j]) + " = " + ac.value.str() +
                      " within tail of 1/2");
        double normalized = ac.value.to_double() / ac.set_mass.to_double();
        c.require(normalized >= threshold,
                  "normalized autocorr " + fmt(normalized) + " >= " + fmt(threshold));

        RegionSet transported = floor;
        for (std::uint64_t s = 0; s < lags[j]; ++s) transported = region_image(transported, spec);
        std::vector<double> base_counts(trials), moved_counts(trials);
        StreamId sub = stream.child(stream_tag::kSide, j);
        run_trials(trials, threads, [&](std::uint64_t t) {
            CountingMeasure nu = sample_poisson(floor, spec, sub.child(stream_tag::kTrial, t));
            base_counts[t] = static_cast<double>(count(nu, floor));
            CountingMeasure moved =
                pushforward(nu, static_cast<std::int64_t>(lags[j]), spec, &transported);
            moved_counts[t] = static_cast<double>(count(moved, floor));
        });
        CovarianceEstimate cov = covariance(base_counts, moved_counts);
        double want = ac.value.to_double();
        c.require(std::abs(cov.covariance - want) <= 3 * cov.standard_error,
                  "MC covariance " + fmt(cov.covariance) + " within 3 SE of " + fmt(want) +
                      " at lag " + std::to_string(lags[j]));
        c.note("lag " + std::to_string(lags[j]) + ": exact " + ac.value.str() + ", MC " +
               fmt(cov.covariance) + " +- " + fmt(cov.standard_error));
    }
    return {9, "non-mixing autocorrelation witness", c.pass, c.detail.str(), 0.0};
}

// 10. Singularity evidence: linear divergence witness, shrinking overlap.
CriterionResult singularity_criterion(std::uint64_t, unsigned) {
    GrowthSpec spec = default_spec();
    Check c;
    double previous = 2.0;
    for (int levels : {4, 6, 8, 10}) {
        SingularityReport r = singularity_evidence(spec, 1, 2, levels);
        Dyadic want = Dyadic(levels).mul_pow2(-2);  // J * (2^0 - 2^-1)^2 = J/4
        c.require(r.divergence_witness == want,
                  "S_" + std::to_string(levels) + " = " + r.divergence_witness.str());
        c.require(r.overlap < previous,
                  "overlap decreases at J=" + std::to_string(levels) + " (" + fmt(r.overlap) +
                      ")");
        c.require(std::abs(r.integral_p - 1.0) < 1e-6 && std::abs(r.integral_q - 1.0) < 1e-6,
                  "partial densities integrate to 1");
        c.require(r.min_density_p > -1e-12 && r.min_density_q > -1e-12,
                  "partial densities are nonnegative");
        previous = r.overlap;
        c.note("J=" + std::to_string(levels) + " overlap " + fmt(r.overlap));
        if (levels == 10) {
            c.require(r.overlap < 0.5, "overlap at J=10 below 0.5");
        }
    }
    return {10, "convolution power singularity evidence", c.pass, c.detail.str(), 0.0};
}

using Runner = CriterionResult (*)(std::uint64_t, unsigned);

constexpr Runner kRunners[] = {
    riesz_coefficient_check,        dissociation_criterion,
    window_mass_criterion,          mecke_criterion,
    fock_criterion,                 chaos_orthogonality_criterion,
    measure_preservation_criterion, superposition_thinning_criterion,
    autocorrelation_criterion,      singularity_criterion,
};

CriterionResult timed(Runner runner, std::uint64_t seed, unsigned threads) {
    auto start = std::chrono::steady_clock::now();
    CriterionResult result = runner(seed, threads);
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, unsigned threads) {
    std::vector<CriterionResult> results;
    results.reserve(std::size(kRunners));
    for (Runner runner : kRunners) results.push_back(timed(runner, seed, threads));
    return results;
}

CriterionResult run_criterion(int id, std::uint64_t seed, unsigned threads) {
    if (id < 1 || id > static_cast<int>(std::size(kRunners))) {
        throw std::invalid_argument("criterion id must be 1..10");
    }
    return timed(kRunners[static_cast<std::size_t>(id - 1)], seed, threads);
}

}  // namespace suspension
