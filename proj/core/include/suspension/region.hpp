#pragma once

#include "suspension/dyadic.hpp"
#include "suspension/growth.hpp"
#include "suspension/tower.hpp"

#include <optional>
#include <string>
#include <vector>

namespace suspension {

/// Cylinder constraint on the word coordinate: the set of words beginning
/// with `bits`. The column class {k(w) = k} is exactly the prefix 1^k 0.
struct Column {
    std::vector<std::uint8_t> bits;

    static Column column_class(int k);
    static Column prefix(const std::string& bit_string);

    /// k if this is exactly the class prefix 1^k 0, else -1.
    int class_index() const;
    std::size_t depth() const { return bits.size(); }
    std::string bit_string() const;

    bool operator==(const Column&) const = default;
};

enum class ColumnRelation { Disjoint, Equal, FirstInsideSecond, SecondInsideFirst };
ColumnRelation relate(const Column& a, const Column& b);

/// Exactly measurable set column x [lo, hi] (levels inclusive, 1-based).
/// Validity requires hi <= min{h(w) : w in column}, which makes the level
/// shift in T^{-1} exact.
struct Rectangle {
    Column column;
    BigInt lo = 1;
    BigInt hi = 1;

    Dyadic measure() const;
    bool contains(const TowerPoint& p) const;
    bool matches_column(const LazyWord& w) const;
};

/// Smallest possible height over the column: h[first zero of the prefix],
/// or h[depth] when the prefix is all ones (heights increase in k).
BigInt min_height(const Column& c, const GrowthSpec& spec);

/// Validating constructor for user-supplied rectangles.
Rectangle make_rectangle(Column column, BigInt lo, BigInt hi, const GrowthSpec& spec);

std::optional<Rectangle> intersect(const Rectangle& a, const Rectangle& b);

/// Finite disjoint union of rectangles plus an exact dyadic bound on the
/// mass of whatever untracked remainder the producing operation left behind
/// (column classes beyond the truncation index). Operations are exact on
/// the tracked parts; tail bounds combine additively.
class RegionSet {
  public:
    RegionSet() = default;

    static RegionSet empty() { return {}; }
    static RegionSet of(Rectangle r);
    /// Verifies pairwise disjointness.
    static RegionSet from_parts(std::vector<Rectangle> parts, Dyadic tail_bound = Dyadic());
    /// Skips the disjointness check (for parts disjoint by construction).
    static RegionSet from_disjoint_parts(std::vector<Rectangle> parts, Dyadic tail_bound = Dyadic());

    /// The finite-measure window X_L truncated at column class K:
    /// parts C(k) x [1, min(h[k], L)] for k <= K, exact tail beyond.
    static RegionSet window(const BigInt& levels, int truncation_k, const GrowthSpec& spec);

    const std::vector<Rectangle>& parts() const { return parts_; }
    const Dyadic& tail_bound() const { return tail_; }
    bool is_empty() const { return parts_.empty(); }

    /// Exact total mass of the tracked parts.
    Dyadic mass() const;

    bool contains(const TowerPoint& p) const;

    /// Sorts parts and merges adjacent level intervals in equal columns.
    RegionSet normalized() const;

    /// Canonical text form of the normalized region, usable as a map key.
    std::string canonical_key() const;

  private:
    std::vector<Rectangle> parts_;
    Dyadic tail_;
};

/// T^{-1} of a rectangle as a finite disjoint union: interior levels shift
/// down, a level-1 slice pulls back to the top of the predecessor column
/// (decomposed into column classes up to truncation when the prefix is all
/// zeros, with the exact remainder mass recorded as tail).
RegionSet rect_preimage(const Rectangle& r, const GrowthSpec& spec);

/// T of a rectangle: interior levels shift up, the top slice wraps to the
/// successor column at level 1.
RegionSet rect_image(const Rectangle& r, const GrowthSpec& spec);

RegionSet region_preimage(const RegionSet& a, const GrowthSpec& spec);
RegionSet region_image(const RegionSet& a, const GrowthSpec& spec);

RegionSet region_intersect(const RegionSet& a, const RegionSet& b);
RegionSet region_unite(const RegionSet& a, const RegionSet& b);
RegionSet region_subtract(const RegionSet& a, const RegionSet& b);

}  // namespace suspension
