#pragma once

#include <stdexcept>
#include <string>

namespace suspension {

// Lazy bit revelation hit the hard cap: refusing to fabricate bits.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A symbolic set operation needed a column class beyond the truncation index.
struct TruncationExceeded : std::runtime_error {
    explicit TruncationExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyRegion : std::runtime_error {
    explicit EmptyRegion(const std::string& what) : std::runtime_error(what) {}
};

struct SeedCollision : std::runtime_error {
    explicit SeedCollision(const std::string& what) : std::runtime_error(what) {}
};

struct EnumerationTooLarge : std::runtime_error {
    explicit EnumerationTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct LevelTooLarge : std::runtime_error {
    explicit LevelTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct GridTooCoarse : std::runtime_error {
    explicit GridTooCoarse(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfRange : std::runtime_error {
    explicit OutOfRange(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace suspension
