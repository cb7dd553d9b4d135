#include "suspension/point_process.hpp"

#include "suspension/errors.hpp"

#include <algorithm>

namespace suspension {

TowerPoint sample_point_in(const Rectangle& rect, const GrowthSpec& spec, const StreamId& stream) {
    Rng rng = stream.child(stream_tag::kPlace).rng();
    BigInt span = rect.hi - rect.lo + 1;
    BigInt level = rect.lo + rng.big_below(span);
    LazyWord word = LazyWord::random(rect.column.bits, stream.child(stream_tag::kWordTail).key(),
                                     spec.cap_depth());
    return TowerPoint{std::move(word), std::move(level)};
}

namespace {

/// Rectangle index chosen proportionally to exact dyadic masses, resolved
/// with a 64-bit uniform fraction (selection granularity 2^-64 of the total).
std::size_t pick_rectangle(const RegionSet& region, const Dyadic& total, Rng& rng) {
    Dyadic target = (total * Dyadic(BigInt(rng.next()))).mul_pow2(-64);
    Dyadic cumulative;
    const auto& parts = region.parts();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        cumulative += parts[i].measure();
        if (target < cumulative) return i;
    }
    return parts.size() - 1;
}

MarkedCountingMeasure sample_impl(const RegionSet& region, const GrowthSpec& spec,
                                  const StreamId& stream, bool with_marks) {
    Dyadic total = region.mass();
    if (total.is_zero()) throw EmptyRegion("cannot sample a region of zero tracked mass");

    Rng count_rng = stream.child(stream_tag::kCount).rng();
    std::uint64_t n = count_rng.poisson(total.to_double());

    MarkedCountingMeasure out;
    out.support = region;
    out.excluded_tail = region.tail_bound();
    out.seed_trace = std::to_string(stream.key());
    out.atoms.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        StreamId atom_stream = stream.child(stream_tag::kPlace, i);
        Rng pick_rng = atom_stream.child(stream_tag::kAux).rng();
        std::size_t idx = pick_rectangle(region, total, pick_rng);
        TowerPoint p = sample_point_in(region.parts()[idx], spec, atom_stream);
        double mark = 0.0;
        if (with_marks) mark = atom_stream.child(stream_tag::kMark).rng().uniform();
        out.atoms.push_back(MarkedAtom{std::move(p), mark});
    }
    return out;
}

}  // namespace

CountingMeasure sample_poisson(const RegionSet& region, const GrowthSpec& spec,
                               const StreamId& stream) {
    MarkedCountingMeasure marked = sample_impl(region, spec, stream, false);
    CountingMeasure out;
    out.support = std::move(marked.support);
    out.seed_trace = std::move(marked.seed_trace);
    out.excluded_tail = std::move(marked.excluded_tail);
    out.atoms.reserve(marked.atoms.size());
    for (auto& a : marked.atoms) out.atoms.push_back(std::move(a.point));
    return out;
}

MarkedCountingMeasure sample_poisson_marked(const RegionSet& region, const GrowthSpec& spec,
                                            const StreamId& stream) {
    return sample_impl(region, spec, stream, true);
}

CountingMeasure superpose(const CountingMeasure& a, const CountingMeasure& b) {
    if (a.seed_trace == b.seed_trace) {
        throw SeedCollision("superposing configurations with identical seed trace " +
                            a.seed_trace);
    }
    CountingMeasure out;
    out.atoms = a.atoms;
    out.atoms.insert(out.atoms.end(), b.atoms.begin(), b.atoms.end());
    out.support = region_unite(a.support, b.support);
    out.seed_trace = a.seed_trace + "+" + b.seed_trace;
    out.excluded_tail = a.excluded_tail + b.excluded_tail;
    return out;
}

CountingMeasure thin(const MarkedCountingMeasure& nu, double c) {
    return thin_split(nu, c).first;
}

std::pair<CountingMeasure, CountingMeasure> thin_split(const MarkedCountingMeasure& nu, double c) {
    if (!(c > 0.0) || c > 1.0) throw std::invalid_argument("thinning level must be in (0, 1]");
    CountingMeasure kept, dropped;
    kept.support = nu.support;
    dropped.support = nu.support;
    kept.excluded_tail = nu.excluded_tail;
    dropped.excluded_tail = nu.excluded_tail;
    kept.seed_trace = nu.seed_trace + "/kept";
    dropped.seed_trace = nu.seed_trace + "/dropped";
    for (const MarkedAtom& a : nu.atoms) {
        (a.mark <= c ? kept : dropped).atoms.push_back(a.point);
    }
    return {std::move(kept), std::move(dropped)};
}

CountingMeasure pushforward(const CountingMeasure& nu, std::int64_t steps, const GrowthSpec& spec,
                            const RegionSet* transported_support) {
    CountingMeasure out;
    out.seed_trace = nu.seed_trace + "/T^" + std::to_string(steps);
    out.excluded_tail = nu.excluded_tail;
    out.atoms.reserve(nu.atoms.size());
    for (const TowerPoint& p : nu.atoms) out.atoms.push_back(apply_T_pow(p, steps, spec));
    if (transported_support != nullptr) {
        out.support = *transported_support;
    } else {
        RegionSet region = nu.support;
        for (std::int64_t s = steps; s > 0; --s) region = region_image(region, spec);
        for (std::int64_t s = steps; s < 0; ++s) region = region_preimage(region, spec);
        out.support = std::move(region);
    }
    return out;
}

std::size_t count(const CountingMeasure& nu, const RegionSet& region) {
    std::size_t c = 0;
    for (const TowerPoint& p : nu.atoms) {
        if (region.contains(p)) ++c;
    }
    return c;
}

std::size_t collision_count(const CountingMeasure& nu) {
    std::size_t collisions = 0;
    for (std::size_t i = 0; i < nu.atoms.size(); ++i) {
        for (std::size_t j = i + 1; j < nu.atoms.size(); ++j) {
            if (same_point(nu.atoms[i], nu.atoms[j])) ++collisions;
        }
    }
    return collisions;
}

}  // namespace suspension
