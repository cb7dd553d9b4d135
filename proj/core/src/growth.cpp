#include "suspension/growth.hpp"

#include "suspension/errors.hpp"

#include <stdexcept>
#include <string>

namespace suspension {

GrowthSpec::GrowthSpec(GrowthConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.m.empty()) throw std::invalid_argument("growth spec needs at least one multiplier");
    for (int mj : cfg_.m) {
        if (mj < 3) throw std::invalid_argument("multipliers must be >= 3, got " + std::to_string(mj));
    }
    if (cfg_.cap_depth < 1) throw std::invalid_argument("cap_depth must be positive");
    if (cfg_.truncation_k < 0) throw std::invalid_argument("truncation_k must be nonnegative");

    // Headroom past the caps covers top-of-column lookups and the Riesz
    // level caps (coefficient maps to J=18, grid densities to J=24).
    std::size_t limit = static_cast<std::size_t>(std::max(cfg_.cap_depth, cfg_.truncation_k)) + 40;
    n_.reserve(limit + 1);
    h_.reserve(limit + 1);
    n_.push_back(1);
    BigInt partial = 0;  // sum_{j<k} n[j]
    h_.push_back(1);
    for (std::size_t j = 0; j < limit; ++j) {
        partial += n_[j];
        n_.push_back(n_[j] * multiplier(j));
        h_.push_back(n_[j + 1] - partial);
    }
}

int GrowthSpec::multiplier(std::size_t j) const {
    if (j < cfg_.m.size()) return cfg_.m[j];
    if (cfg_.repeat_last) return cfg_.m.back();
    throw OutOfRange("multiplier index " + std::to_string(j) +
                     " beyond list and repeat_last is disabled");
}

const BigInt& GrowthSpec::n(std::size_t j) const {
    if (j >= n_.size()) throw OutOfRange("n[" + std::to_string(j) + "] beyond precomputed table");
    return n_[j];
}

const BigInt& GrowthSpec::h(std::size_t k) const {
    if (k >= h_.size()) throw OutOfRange("h[" + std::to_string(k) + "] beyond precomputed table");
    return h_[k];
}

}  // namespace suspension
