#pragma once

#include "suspension/dyadic.hpp"

#include <cstdint>

namespace suspension {

namespace detail {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}
}  // namespace detail

/// splitmix64 sequence. Small, fast, and fully reproducible across platforms;
/// good enough for the Monte Carlo estimates and chi-square tests here.
class Rng {
  public:
    explicit Rng(std::uint64_t state) : state_(state) {}

    std::uint64_t next() {
        state_ += detail::kGolden;
        return detail::mix64(state_);
    }

    /// Uniform in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bit() { return (next() >> 63) != 0; }

    /// Uniform integer in [0, n). Rejection sampling, unbiased.
    std::uint64_t below(std::uint64_t n);

    /// Uniform BigInt in [0, n), n > 0. Rejection on the bit length of n-1.
    BigInt big_below(const BigInt& n);

    /// Poisson(lambda) by Knuth's product method, with halving for large
    /// lambda so the running product never underflows.
    std::uint64_t poisson(double lambda);

  private:
    std::uint64_t state_;
};

/// Hierarchical stream identifier: every (tag, index) child is an
/// independent-looking splitmix64 stream, so per-trial and per-atom draws are
/// reproducible and independent of evaluation order.
class StreamId {
  public:
    StreamId() = default;
    explicit StreamId(std::uint64_t seed) : key_(detail::mix64(seed + detail::kGolden)) {}

    StreamId child(std::uint64_t tag, std::uint64_t index = 0) const {
        StreamId c;
        std::uint64_t k = key_;
        k = detail::mix64(k ^ (tag * detail::kGolden + 0x243F6A8885A308D3ull));
        k = detail::mix64(k + index * detail::kGolden);
        c.key_ = k;
        return c;
    }

    std::uint64_t key() const { return key_; }
    Rng rng() const { return Rng(key_); }

  private:
    std::uint64_t key_ = 0;
};

// Stream tags. Fixed constants: changing them changes every sampled output.
namespace stream_tag {
constexpr std::uint64_t kTrial = 1;
constexpr std::uint64_t kCount = 2;
constexpr std::uint64_t kPlace = 3;
constexpr std::uint64_t kWordTail = 4;
constexpr std::uint64_t kMark = 5;
constexpr std::uint64_t kAux = 6;
constexpr std::uint64_t kSide = 7;
}  // namespace stream_tag

}  // namespace suspension
