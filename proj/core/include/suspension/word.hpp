#pragma once

#include "suspension/errors.hpp"
#include "suspension/rng.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace suspension {

/// Underlying infinite bit tail of a word. Bit i is a pure function of
/// (stream, i), so the value never depends on revelation order; the object
/// only tracks how deep the word has been revealed. Shared between a word
/// and its odometer successors/predecessors so they stay consistent.
class WordTail {
  public:
    enum class Kind { Random, Zeros };

    WordTail(Kind kind, std::uint64_t stream, int cap)
        : kind_(kind), stream_(stream), cap_(cap) {}

    int cap() const { return cap_; }
    int revealed() const { return revealed_; }

    bool bit(int i) {
        if (i >= cap_) {
            throw CapExceeded("bit " + std::to_string(i) + " beyond revelation cap " +
                              std::to_string(cap_));
        }
        if (i >= revealed_) revealed_ = i + 1;
        if (kind_ == Kind::Zeros) return false;
        std::uint64_t chunk =
            detail::mix64(stream_ + detail::kGolden * (static_cast<std::uint64_t>(i >> 6) + 1));
        return ((chunk >> (i & 63)) & 1) != 0;
    }

  private:
    Kind kind_;
    std::uint64_t stream_;
    int cap_;
    int revealed_ = 0;
};

/// A point of the dyadic odometer space {0,1}^N with lazily revealed bits.
/// A finite explicit prefix overrides the shared tail; odometer steps only
/// rewrite the prefix, so revealed bits are immutable.
class LazyWord {
  public:
    LazyWord() = default;

    /// Word with the given fixed leading bits and fair random bits beyond.
    static LazyWord random(std::vector<std::uint8_t> prefix, std::uint64_t stream, int cap);
    /// Word equal to prefix followed by zeros (handy as a deterministic point).
    static LazyWord constant(std::vector<std::uint8_t> prefix, int cap);
    /// Parse "0110" into a constant word.
    static LazyWord parse(const std::string& bits, int cap);

    int cap() const { return tail_ ? tail_->cap() : 0; }

    bool bit(int i) const;

    /// k(w): index of the first 0 bit. Throws CapExceeded if all revealable
    /// bits are 1.
    int first_zero() const;
    /// Index of the first 1 bit, for the odometer predecessor.
    int first_one() const;

    /// Odometer successor w + 1 (flip leading 1s, first 0 becomes 1).
    LazyWord successor() const;
    /// Odometer predecessor (flip leading 0s, first 1 becomes 0).
    LazyWord predecessor() const;

    /// How many leading bits are known without further revelation.
    int revealed_depth() const;
    std::string revealed_bits() const;

    /// True iff the two words agree on every bit either has revealed
    /// (revealing the shallower one as needed).
    static bool same_word(const LazyWord& a, const LazyWord& b);

  private:
    std::vector<std::uint8_t> prefix_;
    std::shared_ptr<WordTail> tail_;
};

}  // namespace suspension
