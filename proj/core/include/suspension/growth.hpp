#pragma once

#include "suspension/dyadic.hpp"

#include <vector>

namespace suspension {

/// Raw configuration for the tower geometry, as read from JSON.
struct GrowthConfig {
    std::vector<int> m{3};       // multipliers, each >= 3
    bool repeat_last = true;     // rule for indices beyond the list
    int cap_depth = 64;          // hard cap on lazy bit revelation
    int truncation_k = 30;       // column-class truncation for region sets
};

/// The integer sequences driving the tower: n[0] = 1, n[j+1] = m[j] * n[j],
/// and column heights h[k] = n[k] - sum_{j<k} n[j]. Heights are strictly
/// increasing since h[k+1] - h[k] = (m[k]-2) * n[k] > 0.
///
/// Immutable after construction; tables are precomputed far enough for every
/// operation bounded by cap_depth / truncation_k plus the Riesz level caps.
class GrowthSpec {
  public:
    explicit GrowthSpec(GrowthConfig cfg = {});

    int cap_depth() const { return cfg_.cap_depth; }
    int truncation_k() const { return cfg_.truncation_k; }
    const GrowthConfig& config() const { return cfg_; }

    /// Multiplier m[j] with the repeat-last rule applied.
    int multiplier(std::size_t j) const;

    const BigInt& n(std::size_t j) const;
    const BigInt& h(std::size_t k) const;
    std::size_t table_size() const { return n_.size(); }

  private:
    GrowthConfig cfg_;
    std::vector<BigInt> n_;
    std::vector<BigInt> h_;
};

}  // namespace suspension
