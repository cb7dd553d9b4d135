#pragma once

#include "suspension/growth.hpp"
#include "suspension/word.hpp"

#include <cstdint>

namespace suspension {

/// A point (w, level) of the Kakutani tower, 1 <= level <= h(w).
struct TowerPoint {
    LazyWord word;
    BigInt level = 1;
};

/// h(w) = h[k(w)] where k(w) is the first 0 bit of w.
BigInt height_of(const LazyWord& word, const GrowthSpec& spec);

/// The tower map: climb one level, or wrap the top to (w + 1, 1).
TowerPoint apply_T(const TowerPoint& p, const GrowthSpec& spec);

/// Inverse map: descend one level, or drop from level 1 to the top of the
/// predecessor column.
TowerPoint apply_T_inv(const TowerPoint& p, const GrowthSpec& spec);

/// T^steps for any sign of steps.
TowerPoint apply_T_pow(TowerPoint p, std::int64_t steps, const GrowthSpec& spec);

/// Equality as points of the tower (same level, same revealed word bits).
bool same_point(const TowerPoint& a, const TowerPoint& b);

}  // namespace suspension
