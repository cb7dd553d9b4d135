#include "suspension/tower.hpp"

#include <stdexcept>

namespace suspension {

BigInt height_of(const LazyWord& word, const GrowthSpec& spec) {
    return spec.h(static_cast<std::size_t>(word.first_zero()));
}

TowerPoint apply_T(const TowerPoint& p, const GrowthSpec& spec) {
    BigInt h = height_of(p.word, spec);
    if (p.level < 1 || p.level > h) throw std::invalid_argument("tower point level out of range");
    if (p.level < h) return {p.word, p.level + 1};
    return {p.word.successor(), 1};
}

TowerPoint apply_T_inv(const TowerPoint& p, const GrowthSpec& spec) {
    if (p.level >= 2) return {p.word, p.level - 1};
    LazyWord prev = p.word.predecessor();
    return {prev, height_of(prev, spec)};
}

TowerPoint apply_T_pow(TowerPoint p, std::int64_t steps, const GrowthSpec& spec) {
    for (; steps > 0; --steps) p = apply_T(p, spec);
    for (; steps < 0; ++steps) p = apply_T_inv(p, spec);
    return p;
}

bool same_point(const TowerPoint& a, const TowerPoint& b) {
    return a.level == b.level && LazyWord::same_word(a.word, b.word);
}

}  // namespace suspension
