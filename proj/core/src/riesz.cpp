#include "suspension/riesz.hpp"

#include "suspension/errors.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace suspension {

namespace {

const Dyadic kZero;

void check_level(int levels, int cap, const char* what) {
    if (levels < 0) throw std::invalid_argument("levels must be >= 0");
    if (levels > cap) {
        throw LevelTooLarge(std::string(what) + " capped at J=" + std::to_string(cap) +
                            ", requested " + std::to_string(levels));
    }
}

/// Enumerates eps in {-1,0,1}^J, calling visit(frequency, weight) where
/// weight = #nonzero digits.
template <typename Visit>
void enumerate_eps(const GrowthSpec& spec, int levels, Visit&& visit) {
    BigInt freq = 0;
    auto rec = [&](auto&& self, int j, int weight) -> void {
        if (j == levels) {
            visit(freq, weight);
            return;
        }
        const BigInt& nj = spec.n(static_cast<std::size_t>(j));
        self(self, j + 1, weight);
        freq += nj;
        self(self, j + 1, weight + 1);
        freq -= 2 * nj;
        self(self, j + 1, weight + 1);
        freq += nj;
    };
    rec(rec, 0, 0);
}

}  // namespace

const Dyadic& RieszCoefficients::at(const BigInt& freq) const {
    auto it = coeffs.find(freq);
    return it == coeffs.end() ? kZero : it->second;
}

RieszCoefficients partial_coeffs(const GrowthSpec& spec, int levels, int level_cap) {
    check_level(levels, level_cap, "coefficient map");
    RieszCoefficients out;
    out.level = levels;
    out.power = 1;
    enumerate_eps(spec, levels, [&](const BigInt& freq, int weight) {
        out.coeffs[freq] += Dyadic::pow2(-weight);
    });
    return out;
}

std::optional<std::vector<int>> signed_digits(const GrowthSpec& spec, const BigInt& freq) {
    BigInt magnitude = abs(freq);
    // prefix_sum[j] = sum_{i<j} n_i; digits above the first j with
    // prefix_sum[j+1] >= |freq| must vanish since n_j > 2 * prefix_sum[j].
    std::vector<BigInt> prefix_sum{0};
    std::size_t top = 0;
    while (prefix_sum[top] < magnitude) {
        if (top + 1 >= spec.table_size()) throw OutOfRange("frequency beyond precomputed table");
        prefix_sum.push_back(prefix_sum[top] + spec.n(top));
        ++top;
    }
    std::vector<int> digits(top, 0);
    BigInt rest = freq;
    for (std::size_t j = top; j-- > 0;) {
        const BigInt& nj = spec.n(j);
        if (abs(rest) <= prefix_sum[j]) {
            digits[j] = 0;
        } else if (abs(rest - nj) <= prefix_sum[j]) {
            digits[j] = 1;
            rest -= nj;
        } else if (abs(rest + nj) <= prefix_sum[j]) {
            digits[j] = -1;
            rest += nj;
        } else {
            return std::nullopt;
        }
    }
    if (rest != 0) return std::nullopt;
    return digits;
}

Dyadic coeff_at(const GrowthSpec& spec, const BigInt& freq) {
    auto digits = signed_digits(spec, freq);
    if (!digits) return Dyadic();
    int weight = 0;
    for (int d : *digits) weight += (d != 0) ? 1 : 0;
    return Dyadic::pow2(-weight);
}

RieszCoefficients convolution_power_coeffs(const GrowthSpec& spec, int power, int levels,
                                           int level_cap) {
    if (power < 1) throw std::invalid_argument("convolution power must be >= 1");
    check_level(levels, level_cap, "coefficient map");
    RieszCoefficients out;
    out.level = levels;
    out.power = power;
    enumerate_eps(spec, levels, [&](const BigInt& freq, int weight) {
        out.coeffs[freq] += Dyadic::pow2(-weight * power);
    });
    return out;
}

DissociationReport dissociation_check(const GrowthSpec& spec, int levels) {
    check_level(levels, kDefaultCoeffLevelCap, "dissociation scan");
    DissociationReport report;
    std::map<BigInt, std::uint64_t> seen;
    enumerate_eps(spec, levels, [&](const BigInt& freq, int) {
        ++report.vectors;
        if (++seen[freq] > 1) ++report.collisions;
    });
    return report;
}

namespace {

struct DensityGrid {
    std::uint64_t size = 0;
    std::vector<std::uint64_t> freq_mod;  // n_j mod grid size
    double amp_p = 0.0;
    double amp_q = 0.0;

    /// Exact phase (n_j * i) mod g, then one cos per factor.
    std::pair<double, double> densities(std::uint64_t i) const {
        double fp = 1.0;
        double fq = 1.0;
        for (std::uint64_t fm : freq_mod) {
            std::uint64_t r = (fm * i) % size;
            double c = std::cos(2.0 * std::numbers::pi * static_cast<double>(r) /
                                static_cast<double>(size));
            fp *= 1.0 + amp_p * c;
            fq *= 1.0 + amp_q * c;
        }
        return {fp, fq};
    }
};

DensityGrid make_grid(const GrowthSpec& spec, int p, int q, int levels, std::uint64_t grid_size,
                      int level_cap) {
    check_level(levels, level_cap, "grid density");
    if (p < 1 || q < 1) throw std::invalid_argument("convolution powers must be >= 1");
    BigInt top = spec.n(static_cast<std::size_t>(levels));
    if (grid_size == 0) {
        std::uint64_t g = 1;
        while (BigInt(g) < 2 * top) g <<= 1;
        grid_size = g << 2;
    }
    if ((grid_size & (grid_size - 1)) != 0 || BigInt(grid_size) < 2 * top) {
        throw GridTooCoarse("grid size must be a power of two >= 2 n_J = " + (2 * top).str());
    }
    DensityGrid grid;
    grid.size = grid_size;
    grid.amp_p = std::ldexp(1.0, 1 - p);
    grid.amp_q = std::ldexp(1.0, 1 - q);
    grid.freq_mod.reserve(static_cast<std::size_t>(levels));
    for (int j = 0; j < levels; ++j) {
        grid.freq_mod.push_back(
            (spec.n(static_cast<std::size_t>(j)) % BigInt(grid_size)).convert_to<std::uint64_t>());
    }
    return grid;
}

struct Kahan {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v) {
        double y = v - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

SingularityReport singularity_evidence(const GrowthSpec& spec, int p, int q, int levels,
                                       std::uint64_t grid_size, int level_cap) {
    DensityGrid grid = make_grid(spec, p, q, levels, grid_size, level_cap);
    SingularityReport report;
    report.levels = levels;
    report.p = p;
    report.q = q;
    report.grid_size = grid.size;
    Dyadic gap = Dyadic::pow2(1 - p) - Dyadic::pow2(1 - q);
    report.divergence_witness = Dyadic(levels) * gap * gap;

    Kahan overlap, int_p, int_q;
    double min_p = 1.0, min_q = 1.0;
    for (std::uint64_t i = 0; i < grid.size; ++i) {
        auto [fp, fq] = grid.densities(i);
        overlap.add(std::min(fp, fq));
        int_p.add(fp);
        int_q.add(fq);
        min_p = std::min(min_p, fp);
        min_q = std::min(min_q, fq);
    }
    double g = static_cast<double>(grid.size);
    report.overlap = overlap.sum / g;
    report.integral_p = int_p.sum / g;
    report.integral_q = int_q.sum / g;
    report.min_density_p = min_p;
    report.min_density_q = min_q;
    return report;
}

void density_csv(const GrowthSpec& spec, int p, int q, int levels, std::uint64_t grid_size,
                 std::ostream& out, int level_cap) {
    DensityGrid grid = make_grid(spec, p, q, levels, grid_size, level_cap);
    out << "t,f_p,f_q\n";
    char line[96];
    for (std::uint64_t i = 0; i < grid.size; ++i) {
        auto [fp, fq] = grid.densities(i);
        double t = static_cast<double>(i) / static_cast<double>(grid.size);
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", t, fp, fq);
        out << line;
    }
}

Autocorrelation autocorr_exact(const RegionSet& set, std::uint64_t lag, const GrowthSpec& spec) {
    RegionSet shifted = set;
    for (std::uint64_t i = 0; i < lag; ++i) shifted = region_preimage(shifted, spec);
    RegionSet overlap = region_intersect(set, shifted);
    Autocorrelation out;
    out.lag = lag;
    out.value = overlap.mass();
    out.error_bound = overlap.tail_bound();
    out.set_mass = set.mass();
    return out;
}

std::vector<std::uint64_t> nj_lags(const GrowthSpec& spec, int maxj) {
    if (maxj < 0) throw std::invalid_argument("maxj must be >= 0");
    std::vector<std::uint64_t> lags;
    lags.reserve(static_cast<std::size_t>(maxj) + 1);
    for (int j = 0; j <= maxj; ++j) {
        const BigInt& nj = spec.n(static_cast<std::size_t>(j));
        if (nj > BigInt(~std::uint64_t{0})) throw OutOfRange("lag n_j exceeds 64 bits");
        lags.push_back(nj.convert_to<std::uint64_t>());
    }
    return lags;
}

}  // namespace suspension
