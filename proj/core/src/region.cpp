#include "suspension/region.hpp"

#include "suspension/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace suspension {

Column Column::column_class(int k) {
    if (k < 0) throw std::invalid_argument("column class index must be >= 0");
    Column c;
    c.bits.assign(static_cast<std::size_t>(k) + 1, 1);
    c.bits.back() = 0;
    return c;
}

Column Column::prefix(const std::string& bit_string) {
    Column c;
    c.bits.reserve(bit_string.size());
    for (char ch : bit_string) {
        if (ch != '0' && ch != '1') throw ParseError("column prefix must be 0/1: " + bit_string);
        c.bits.push_back(ch == '1' ? 1 : 0);
    }
    return c;
}

int Column::class_index() const {
    if (bits.empty() || bits.back() != 0) return -1;
    for (std::size_t i = 0; i + 1 < bits.size(); ++i) {
        if (bits[i] != 1) return -1;
    }
    return static_cast<int>(bits.size()) - 1;
}

std::string Column::bit_string() const {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

ColumnRelation relate(const Column& a, const Column& b) {
    std::size_t common = std::min(a.bits.size(), b.bits.size());
    for (std::size_t i = 0; i < common; ++i) {
        if (a.bits[i] != b.bits[i]) return ColumnRelation::Disjoint;
    }
    if (a.bits.size() == b.bits.size()) return ColumnRelation::Equal;
    return a.bits.size() > b.bits.size() ? ColumnRelation::FirstInsideSecond
                                         : ColumnRelation::SecondInsideFirst;
}

BigInt min_height(const Column& c, const GrowthSpec& spec) {
    for (std::size_t i = 0; i < c.bits.size(); ++i) {
        if (c.bits[i] == 0) return spec.h(i);
    }
    return spec.h(c.bits.size());
}

Dyadic Rectangle::measure() const {
    Dyadic len(hi - lo + 1);
    return len.mul_pow2(-static_cast<int>(column.bits.size()));
}

bool Rectangle::matches_column(const LazyWord& w) const {
    for (std::size_t i = 0; i < column.bits.size(); ++i) {
        if (w.bit(static_cast<int>(i)) != (column.bits[i] != 0)) return false;
    }
    return true;
}

bool Rectangle::contains(const TowerPoint& p) const {
    if (p.level < lo || p.level > hi) return false;
    return matches_column(p.word);
}

Rectangle make_rectangle(Column column, BigInt lo, BigInt hi, const GrowthSpec& spec) {
    if (lo < 1 || hi < lo) throw std::invalid_argument("rectangle needs 1 <= lo <= hi");
    if (hi > min_height(column, spec)) {
        throw std::invalid_argument("rectangle top " + hi.str() +
                                    " exceeds the minimal column height " +
                                    min_height(column, spec).str());
    }
    return Rectangle{std::move(column), std::move(lo), std::move(hi)};
}

std::optional<Rectangle> intersect(const Rectangle& a, const Rectangle& b) {
    ColumnRelation rel = relate(a.column, b.column);
    if (rel == ColumnRelation::Disjoint) return std::nullopt;
    const Column& finer = (rel == ColumnRelation::FirstInsideSecond) ? a.column : b.column;
    BigInt lo = std::max(a.lo, b.lo);
    BigInt hi = std::min(a.hi, b.hi);
    if (lo > hi) return std::nullopt;
    return Rectangle{finer, lo, hi};
}

namespace {

bool intervals_overlap(const Rectangle& a, const Rectangle& b) {
    return std::max(a.lo, b.lo) <= std::min(a.hi, b.hi);
}

void check_disjoint(const std::vector<Rectangle>& parts) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            if (relate(parts[i].column, parts[j].column) != ColumnRelation::Disjoint &&
                intervals_overlap(parts[i], parts[j])) {
                throw std::invalid_argument("region parts are not pairwise disjoint");
            }
        }
    }
}

/// Pieces of `b` outside `a`. Splitting a coarser column around a finer one
/// yields one branch-off cylinder per extra prefix bit.
void subtract_rect(const Rectangle& b, const Rectangle& a, std::vector<Rectangle>& out) {
    ColumnRelation rel = relate(b.column, a.column);
    if (rel == ColumnRelation::Disjoint || !intervals_overlap(b, a)) {
        out.push_back(b);
        return;
    }
    if (rel == ColumnRelation::SecondInsideFirst) {
        // a's column strictly refines b's: peel off sibling cylinders.
        for (std::size_t i = b.column.bits.size(); i < a.column.bits.size(); ++i) {
            Column branch;
            branch.bits.assign(a.column.bits.begin(),
                               a.column.bits.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            branch.bits[i] ^= 1;
            out.push_back(Rectangle{std::move(branch), b.lo, b.hi});
        }
    }
    // Remaining column is a's (or the common one); remove the level overlap.
    const Column& col = (rel == ColumnRelation::SecondInsideFirst) ? a.column : b.column;
    if (b.lo < a.lo) out.push_back(Rectangle{col, b.lo, a.lo - 1});
    if (b.hi > a.hi) out.push_back(Rectangle{col, a.hi + 1, b.hi});
}

std::vector<Rectangle> subtract_parts(std::vector<Rectangle> acc, const std::vector<Rectangle>& minus) {
    for (const Rectangle& m : minus) {
        std::vector<Rectangle> next;
        next.reserve(acc.size());
        for (const Rectangle& r : acc) subtract_rect(r, m, next);
        acc = std::move(next);
    }
    return acc;
}

}  // namespace

RegionSet RegionSet::of(Rectangle r) {
    return from_disjoint_parts({std::move(r)});
}

RegionSet RegionSet::from_parts(std::vector<Rectangle> parts, Dyadic tail_bound) {
    check_disjoint(parts);
    return from_disjoint_parts(std::move(parts), std::move(tail_bound));
}

RegionSet RegionSet::from_disjoint_parts(std::vector<Rectangle> parts, Dyadic tail_bound) {
    if (tail_bound.is_negative()) throw std::invalid_argument("tail bound must be nonnegative");
    RegionSet s;
    s.parts_ = std::move(parts);
    s.tail_ = std::move(tail_bound);
    return s;
}

RegionSet RegionSet::window(const BigInt& levels, int truncation_k, const GrowthSpec& spec) {
    if (levels < 1) throw std::invalid_argument("window needs at least one level");
    std::vector<Rectangle> parts;
    parts.reserve(static_cast<std::size_t>(truncation_k) + 1);
    for (int k = 0; k <= truncation_k; ++k) {
        BigInt top = std::min(spec.h(static_cast<std::size_t>(k)), levels);
        parts.push_back(Rectangle{Column::column_class(k), 1, top});
    }
    // Exact tail: sum_{k>K} 2^{-(k+1)} min(h[k], L). Heights increase, so
    // beyond the first k with h[k] >= L every term is L * 2^{-(k+1)}.
    Dyadic tail;
    int k = truncation_k + 1;
    while (spec.h(static_cast<std::size_t>(k)) < levels) {
        tail += Dyadic(spec.h(static_cast<std::size_t>(k))).mul_pow2(-(k + 1));
        ++k;
    }
    tail += Dyadic(levels).mul_pow2(-k);
    return from_disjoint_parts(std::move(parts), std::move(tail));
}

Dyadic RegionSet::mass() const {
    Dyadic total;
    for (const Rectangle& r : parts_) total += r.measure();
    return total;
}

bool RegionSet::contains(const TowerPoint& p) const {
    for (const Rectangle& r : parts_) {
        if (r.contains(p)) return true;
    }
    return false;
}

RegionSet RegionSet::normalized() const {
    std::vector<Rectangle> sorted = parts_;
    std::sort(sorted.begin(), sorted.end(), [](const Rectangle& a, const Rectangle& b) {
        if (a.column.bits != b.column.bits) return a.column.bits < b.column.bits;
        return a.lo < b.lo;
    });
    std::vector<Rectangle> merged;
    for (Rectangle& r : sorted) {
        if (!merged.empty() && merged.back().column == r.column &&
            merged.back().hi + 1 == r.lo) {
            merged.back().hi = r.hi;
        } else {
            merged.push_back(std::move(r));
        }
    }
    return from_disjoint_parts(std::move(merged), tail_);
}

std::string RegionSet::canonical_key() const {
    RegionSet norm = normalized();
    std::string key;
    for (const Rectangle& r : norm.parts_) {
        key += r.column.bit_string();
        key += ':';
        key += r.lo.str();
        key += ':';
        key += r.hi.str();
        key += ';';
    }
    key += "tail=";
    key += norm.tail_.str();
    return key;
}

RegionSet rect_preimage(const Rectangle& r, const GrowthSpec& spec) {
    std::vector<Rectangle> parts;
    Dyadic tail;
    if (r.hi >= 2) {
        BigInt lo = std::max(r.lo, BigInt(2));
        parts.push_back(Rectangle{r.column, lo - 1, r.hi - 1});
    }
    if (r.lo == 1) {
        const auto& w = r.column.bits;
        auto first_one = std::find(w.begin(), w.end(), std::uint8_t{1});
        if (first_one != w.end()) {
            // 0^j 1 t steps back to 1^j 0 t, landing on top of class j.
            std::size_t j = static_cast<std::size_t>(first_one - w.begin());
            Column pred{w};
            std::fill(pred.bits.begin(), pred.bits.begin() + static_cast<std::ptrdiff_t>(j), 1);
            pred.bits[j] = 0;
            const BigInt& top = spec.h(j);
            parts.push_back(Rectangle{std::move(pred), top, top});
        } else {
            // All-zero prefix: predecessors are the tops of every column
            // class >= |w|; track classes up to K and bound the rest.
            int K = spec.truncation_k();
            if (static_cast<int>(w.size()) > K) {
                throw TruncationExceeded("level-1 slice needs column classes beyond K=" +
                                         std::to_string(K));
            }
            for (int k = static_cast<int>(w.size()); k <= K; ++k) {
                const BigInt& top = spec.h(static_cast<std::size_t>(k));
                parts.push_back(Rectangle{Column::column_class(k), top, top});
            }
            tail += Dyadic::pow2(-(K + 1));
        }
    }
    return RegionSet::from_disjoint_parts(std::move(parts), std::move(tail));
}

RegionSet rect_image(const Rectangle& r, const GrowthSpec& spec) {
    const auto& w = r.column.bits;
    auto first_zero = std::find(w.begin(), w.end(), std::uint8_t{0});
    if (first_zero == w.end()) {
        // Height is not constant on an all-ones prefix; split into classes.
        int K = spec.truncation_k();
        if (static_cast<int>(w.size()) > K) {
            throw TruncationExceeded("image needs column classes beyond K=" + std::to_string(K));
        }
        std::vector<Rectangle> parts;
        Dyadic tail = Dyadic(r.hi - r.lo + 1).mul_pow2(-(K + 1));
        for (int k = static_cast<int>(w.size()); k <= K; ++k) {
            RegionSet piece = rect_image(Rectangle{Column::column_class(k), r.lo, r.hi}, spec);
            for (const Rectangle& p : piece.parts()) parts.push_back(p);
            tail += piece.tail_bound();
        }
        return RegionSet::from_disjoint_parts(std::move(parts), std::move(tail));
    }

    std::size_t j = static_cast<std::size_t>(first_zero - w.begin());
    const BigInt& h = spec.h(j);
    std::vector<Rectangle> parts;
    if (r.lo <= h - 1) {
        BigInt hi = std::min(r.hi, h - 1);
        parts.push_back(Rectangle{r.column, r.lo + 1, hi + 1});
    }
    if (r.hi == h) {
        // Top of class j wraps to the successor column 0^j 1 t at level 1.
        Column succ{w};
        std::fill(succ.bits.begin(), succ.bits.begin() + static_cast<std::ptrdiff_t>(j), 0);
        succ.bits[j] = 1;
        parts.push_back(Rectangle{std::move(succ), 1, 1});
    }
    return RegionSet::from_disjoint_parts(std::move(parts));
}

RegionSet region_preimage(const RegionSet& a, const GrowthSpec& spec) {
    std::vector<Rectangle> parts;
    Dyadic tail = a.tail_bound();
    for (const Rectangle& r : a.parts()) {
        RegionSet piece = rect_preimage(r, spec);
        for (const Rectangle& p : piece.parts()) parts.push_back(p);
        tail += piece.tail_bound();
    }
    return RegionSet::from_disjoint_parts(std::move(parts), std::move(tail)).normalized();
}

RegionSet region_image(const RegionSet& a, const GrowthSpec& spec) {
    std::vector<Rectangle> parts;
    Dyadic tail = a.tail_bound();
    for (const Rectangle& r : a.parts()) {
        RegionSet piece = rect_image(r, spec);
        for (const Rectangle& p : piece.parts()) parts.push_back(p);
        tail += piece.tail_bound();
    }
    return RegionSet::from_disjoint_parts(std::move(parts), std::move(tail)).normalized();
}

RegionSet region_intersect(const RegionSet& a, const RegionSet& b) {
    std::vector<Rectangle> parts;
    for (const Rectangle& x : a.parts()) {
        for (const Rectangle& y : b.parts()) {
            if (auto r = intersect(x, y)) parts.push_back(std::move(*r));
        }
    }
    return RegionSet::from_disjoint_parts(std::move(parts), a.tail_bound() + b.tail_bound())
        .normalized();
}

RegionSet region_unite(const RegionSet& a, const RegionSet& b) {
    std::vector<Rectangle> parts = a.parts();
    std::vector<Rectangle> extra = subtract_parts(b.parts(), a.parts());
    parts.insert(parts.end(), std::make_move_iterator(extra.begin()),
                 std::make_move_iterator(extra.end()));
    return RegionSet::from_disjoint_parts(std::move(parts), a.tail_bound() + b.tail_bound())
        .normalized();
}

RegionSet region_subtract(const RegionSet& a, const RegionSet& b) {
    return RegionSet::from_disjoint_parts(subtract_parts(a.parts(), b.parts()),
                                          a.tail_bound() + b.tail_bound())
        .normalized();
}

}  // namespace suspension
