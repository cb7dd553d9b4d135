#include "suspension/rng.hpp"

#include <cmath>

namespace suspension {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t r;
    do {
        r = next();
    } while (r >= limit);
    return r % n;
}

BigInt Rng::big_below(const BigInt& n) {
    if (n <= 1) return 0;
    unsigned bits = boost::multiprecision::msb(n - 1) + 1;
    for (;;) {
        BigInt r = 0;
        unsigned got = 0;
        while (got < bits) {
            r <<= 64;
            r |= BigInt(next());
            got += 64;
        }
        r >>= (got - bits);
        if (r < n) return r;
    }
}

std::uint64_t Rng::poisson(double lambda) {
    if (lambda <= 0) return 0;
    if (lambda > 30) {
        // Poisson(a+b) = Poisson(a) + Poisson(b) for independent halves.
        double half = lambda / 2;
        return poisson(half) + poisson(lambda - half);
    }
    const double threshold = std::exp(-lambda);
    std::uint64_t k = 0;
    double p = 1.0;
    for (;;) {
        p *= uniform();
        if (p <= threshold) return k;
        ++k;
    }
}

}  // namespace suspension
