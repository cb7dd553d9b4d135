#include "suspension/dyadic.hpp"

#include "suspension/errors.hpp"

#include <cmath>

namespace suspension {

void Dyadic::normalize() {
    if (num_ == 0) {
        exp_ = 0;
        return;
    }
    while (exp_ > 0 && (num_ & 1) == 0) {
        num_ >>= 1;
        --exp_;
    }
}

Dyadic Dyadic::pow2(int e) {
    if (e >= 0) return Dyadic(BigInt(1) << e);
    return Dyadic(BigInt(1), static_cast<unsigned>(-e));
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
    unsigned e = std::max(exp_, o.exp_);
    BigInt a = num_ << (e - exp_);
    BigInt b = o.num_ << (e - o.exp_);
    return Dyadic(a + b, e);
}

Dyadic Dyadic::mul_pow2(int shift) const {
    if (shift >= 0) {
        int drop = std::min<int>(shift, static_cast<int>(exp_));
        return Dyadic(num_ << (shift - drop), exp_ - drop);
    }
    return Dyadic(num_, exp_ + static_cast<unsigned>(-shift));
}

Dyadic Dyadic::pow(unsigned p) const {
    Dyadic out(1);
    Dyadic base = *this;
    while (p > 0) {
        if (p & 1) out *= base;
        base *= base;
        p >>= 1;
    }
    return out;
}

std::strong_ordering Dyadic::operator<=>(const Dyadic& o) const {
    unsigned e = std::max(exp_, o.exp_);
    BigInt a = num_ << (e - exp_);
    BigInt b = o.num_ << (e - o.exp_);
    if (a < b) return std::strong_ordering::less;
    if (a > b) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

double Dyadic::to_double() const {
    return std::ldexp(num_.convert_to<double>(), -static_cast<int>(exp_));
}

std::string Dyadic::str() const {
    if (exp_ == 0) return num_.str();
    return num_.str() + "/2^" + std::to_string(exp_);
}

Dyadic Dyadic::parse(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Dyadic(BigInt(text));
        std::string den = text.substr(slash + 1);
        if (den.rfind("2^", 0) != 0) throw ParseError("dyadic denominator must be 2^q: " + text);
        BigInt num(text.substr(0, slash));
        unsigned exp = static_cast<unsigned>(std::stoul(den.substr(2)));
        return Dyadic(num, exp);
    } catch (const std::exception&) {
        throw ParseError("cannot parse dyadic rational: " + text);
    }
}

}  // namespace suspension
