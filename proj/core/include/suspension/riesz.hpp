#pragma once

#include "suspension/dyadic.hpp"
#include "suspension/growth.hpp"
#include "suspension/region.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

namespace suspension {

/// Exact Fourier coefficients of a partial Riesz product: frequency
/// sum_j eps_j n_j maps to 2^{-(p * #nonzero eps)}; the representation is
/// unique because every multiplier is >= 3 (dissociation).
struct RieszCoefficients {
    int level = 0;           // number of product factors J
    int power = 1;           // convolution power p
    std::map<BigInt, Dyadic> coeffs;

    const Dyadic& at(const BigInt& freq) const;
    Dyadic total_mass() const { return at(0); }
};

inline constexpr int kDefaultCoeffLevelCap = 18;
inline constexpr int kDefaultGridLevelCap = 24;

/// Expansion of prod_{j<J} (1 + cos 2 pi n_j t); 3^J materialized terms.
RieszCoefficients partial_coeffs(const GrowthSpec& spec, int levels,
                                 int level_cap = kDefaultCoeffLevelCap);

/// sigma-hat at a single frequency by greedy signed-digit decomposition
/// over the n_j; exact 0 when no representation exists.
Dyadic coeff_at(const GrowthSpec& spec, const BigInt& freq);

/// Signed digits of the decomposition, innermost first, when representable.
std::optional<std::vector<int>> signed_digits(const GrowthSpec& spec, const BigInt& freq);

/// Coefficients of the convolution power sigma^{*p}: coeff_at(freq)^p,
/// equal to the generalized Riesz product prod (1 + 2^{1-p} cos 2 pi n_j t).
RieszCoefficients convolution_power_coeffs(const GrowthSpec& spec, int power, int levels,
                                           int level_cap = kDefaultCoeffLevelCap);

/// Brute-force check that distinct eps vectors give distinct frequencies.
struct DissociationReport {
    std::uint64_t vectors = 0;
    std::uint64_t collisions = 0;
    bool dissociated() const { return collisions == 0; }
};
DissociationReport dissociation_check(const GrowthSpec& spec, int levels);

struct SingularityReport {
    int levels = 0;
    int p = 1;
    int q = 2;
    std::uint64_t grid_size = 0;
    /// Divergence witness S_J = sum_{j<J} (2^{1-p} - 2^{1-q})^2; linear in J,
    /// and its divergence is the classical singularity criterion for
    /// dissociated Riesz products.
    Dyadic divergence_witness;
    /// int min(f_p, f_q) dt on the grid; decays toward 0 for singular pairs.
    double overlap = 0.0;
    double integral_p = 0.0;
    double integral_q = 0.0;
    double min_density_p = 0.0;
    double min_density_q = 0.0;
};

/// Evaluates both degree-J partial product densities on a uniform dyadic
/// grid (grid_size 0 picks 2^{ceil(log2(2 n_J)) + 2}).
SingularityReport singularity_evidence(const GrowthSpec& spec, int p, int q, int levels,
                                       std::uint64_t grid_size = 0,
                                       int level_cap = kDefaultGridLevelCap);

/// Writes "t,f_p,f_q" CSV rows for external plotting.
void density_csv(const GrowthSpec& spec, int p, int q, int levels, std::uint64_t grid_size,
                 std::ostream& out, int level_cap = kDefaultGridLevelCap);

struct Autocorrelation {
    std::uint64_t lag = 0;
    Dyadic value;       // mu(A ∩ T^-lag A) on the tracked parts
    Dyadic error_bound; // accumulated truncation tails
    Dyadic set_mass;    // mu(A)
};

/// Exact mu(A ∩ T^{-lag} A) via iterated symbolic preimage; equals the
/// covariance of the suspension count observables at that lag.
Autocorrelation autocorr_exact(const RegionSet& set, std::uint64_t lag, const GrowthSpec& spec);

/// The lags n_0 .. n_maxj as machine integers.
std::vector<std::uint64_t> nj_lags(const GrowthSpec& spec, int maxj);

}  // namespace suspension
