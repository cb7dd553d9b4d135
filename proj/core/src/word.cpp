#include "suspension/word.hpp"

#include <algorithm>

namespace suspension {

LazyWord LazyWord::random(std::vector<std::uint8_t> prefix, std::uint64_t stream, int cap) {
    LazyWord w;
    w.prefix_ = std::move(prefix);
    w.tail_ = std::make_shared<WordTail>(WordTail::Kind::Random, stream, cap);
    return w;
}

LazyWord LazyWord::constant(std::vector<std::uint8_t> prefix, int cap) {
    LazyWord w;
    w.prefix_ = std::move(prefix);
    w.tail_ = std::make_shared<WordTail>(WordTail::Kind::Zeros, 0, cap);
    return w;
}

LazyWord LazyWord::parse(const std::string& bits, int cap) {
    std::vector<std::uint8_t> prefix;
    prefix.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') throw ParseError("word bits must be 0/1: " + bits);
        prefix.push_back(c == '1' ? 1 : 0);
    }
    return constant(std::move(prefix), cap);
}

bool LazyWord::bit(int i) const {
    if (i < static_cast<int>(prefix_.size())) return prefix_[static_cast<std::size_t>(i)] != 0;
    if (!tail_) throw CapExceeded("word has no tail source");
    return tail_->bit(i);
}

int LazyWord::first_zero() const {
    for (int i = 0; i < cap(); ++i) {
        if (!bit(i)) return i;
    }
    throw CapExceeded("no 0 bit within revelation cap " + std::to_string(cap()));
}

int LazyWord::first_one() const {
    for (int i = 0; i < cap(); ++i) {
        if (bit(i)) return i;
    }
    throw CapExceeded("no 1 bit within revelation cap " + std::to_string(cap()));
}

LazyWord LazyWord::successor() const {
    int k = first_zero();
    LazyWord out = *this;
    out.prefix_.resize(std::max<std::size_t>(prefix_.size(), static_cast<std::size_t>(k) + 1));
    for (int i = 0; i < k; ++i) out.prefix_[static_cast<std::size_t>(i)] = 0;
    out.prefix_[static_cast<std::size_t>(k)] = 1;
    // bits beyond k stay as they were (copied prefix or shared tail)
    return out;
}

LazyWord LazyWord::predecessor() const {
    int k = first_one();
    LazyWord out = *this;
    out.prefix_.resize(std::max<std::size_t>(prefix_.size(), static_cast<std::size_t>(k) + 1));
    for (int i = 0; i < k; ++i) out.prefix_[static_cast<std::size_t>(i)] = 1;
    out.prefix_[static_cast<std::size_t>(k)] = 0;
    return out;
}

int LazyWord::revealed_depth() const {
    int tail_depth = tail_ ? tail_->revealed() : 0;
    return std::max<int>(static_cast<int>(prefix_.size()), tail_depth);
}

std::string LazyWord::revealed_bits() const {
    int depth = revealed_depth();
    std::string out;
    out.reserve(static_cast<std::size_t>(depth));
    for (int i = 0; i < depth; ++i) out.push_back(bit(i) ? '1' : '0');
    return out;
}

bool LazyWord::same_word(const LazyWord& a, const LazyWord& b) {
    int depth = std::max(a.revealed_depth(), b.revealed_depth());
    for (int i = 0; i < depth; ++i) {
        if (a.bit(i) != b.bit(i)) return false;
    }
    return true;
}

}  // namespace suspension
