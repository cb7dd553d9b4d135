#pragma once

#include "suspension/region.hpp"
#include "suspension/rng.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace suspension {

/// A finite Poisson configuration on a finite-measure region. Atoms carry
/// lazily revealed words; identical (seed, region) inputs reproduce the
/// configuration bit for bit. The mass of the untracked region excluded
/// from sampling is reported in excluded_tail.
struct CountingMeasure {
    std::vector<TowerPoint> atoms;
    RegionSet support;
    std::string seed_trace;
    Dyadic excluded_tail;
};

struct MarkedAtom {
    TowerPoint point;
    double mark = 0.0;  // independent uniform [0,1)
};

struct MarkedCountingMeasure {
    std::vector<MarkedAtom> atoms;
    RegionSet support;
    std::string seed_trace;
    Dyadic excluded_tail;
};

/// One mu-uniform point of a rectangle: column bits fixed, level uniform,
/// word tail extended by fair bits on demand.
TowerPoint sample_point_in(const Rectangle& rect, const GrowthSpec& spec, const StreamId& stream);

/// Count-then-locations Poisson sampling: atom count ~ Poisson(mass), then
/// i.i.d. placement by rectangle choice proportional to exact dyadic mass.
CountingMeasure sample_poisson(const RegionSet& region, const GrowthSpec& spec,
                               const StreamId& stream);

/// Same atoms as sample_poisson for the same stream, plus independent marks.
MarkedCountingMeasure sample_poisson_marked(const RegionSet& region, const GrowthSpec& spec,
                                            const StreamId& stream);

/// Superposition: multiset union of two independently sampled configurations.
CountingMeasure superpose(const CountingMeasure& a, const CountingMeasure& b);

/// Keep exactly the atoms with mark <= c.
CountingMeasure thin(const MarkedCountingMeasure& nu, double c);
/// Retained (mark <= c) and discarded halves; independent Poisson processes.
std::pair<CountingMeasure, CountingMeasure> thin_split(const MarkedCountingMeasure& nu, double c);

/// T_*^steps: moves every atom and transports the support region. Pass the
/// precomputed transported region when pushing many configurations through
/// the same number of steps; it must equal the |steps|-fold image (or
/// preimage, for negative steps) of nu.support.
CountingMeasure pushforward(const CountingMeasure& nu, std::int64_t steps, const GrowthSpec& spec,
                            const RegionSet* transported_support = nullptr);

std::size_t count(const CountingMeasure& nu, const RegionSet& region);

/// Exactly colliding atoms can only come from seed pathologies; surfaced as
/// a diagnostic, never deduplicated.
std::size_t collision_count(const CountingMeasure& nu);

}  // namespace suspension
