#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>

namespace suspension {

using BigInt = boost::multiprecision::cpp_int;

/// Exact dyadic rational num / 2^exp.
///
/// Every measure in the tower model is of this form (cylinder masses are
/// powers of two, level counts are integers), so arithmetic on Dyadic is
/// closed under +, -, * and integer powers. Conversion to double happens
/// only at output boundaries.
class Dyadic {
  public:
    Dyadic() = default;
    Dyadic(int v) : num_(v) {}                       // NOLINT(google-explicit-constructor)
    Dyadic(const BigInt& v) : num_(v) {}             // NOLINT(google-explicit-constructor)
    Dyadic(BigInt num, unsigned exp) : num_(std::move(num)), exp_(exp) { normalize(); }

    /// 2^e for any sign of e.
    static Dyadic pow2(int e);
    /// Parse "p" or "p/2^q".
    static Dyadic parse(const std::string& text);

    const BigInt& numerator() const { return num_; }
    unsigned exponent() const { return exp_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return exp_ == 0; }

    Dyadic operator-() const { return Dyadic(-num_, exp_); }
    Dyadic operator+(const Dyadic& o) const;
    Dyadic operator-(const Dyadic& o) const { return *this + (-o); }
    Dyadic operator*(const Dyadic& o) const { return Dyadic(num_ * o.num_, exp_ + o.exp_); }
    Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
    Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
    Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

    /// Multiply by 2^shift (shift may be negative).
    Dyadic mul_pow2(int shift) const;
    Dyadic pow(unsigned p) const;

    bool operator==(const Dyadic& o) const { return num_ == o.num_ && exp_ == o.exp_; }
    std::strong_ordering operator<=>(const Dyadic& o) const;

    double to_double() const;
    std::string str() const;

  private:
    void normalize();

    BigInt num_ = 0;
    unsigned exp_ = 0;  // denominator is 2^exp_
};

}  // namespace suspension
