#pragma once

#include "suspension/observable.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace suspension {

/// Finite ground set of m independent Poisson coordinates with means
/// lambda_i, truncated to counts <= count_cap for exact enumeration. The
/// probability mass beyond the cap is reported with every expectation.
struct FiniteGround {
    std::vector<double> lambda;
    int count_cap = 20;

    std::size_t size() const { return lambda.size(); }
    /// sum_i P(Poisson(lambda_i) > count_cap).
    double tail_probability() const;
};

/// Polynomial observable over the ground counts: the same algebra as the
/// tower observables, with counts over atom subsets and first integrals
/// given by per-atom values.
class GroundObservable {
  public:
    GroundObservable() : GroundObservable(constant(0.0)) {}

    static GroundObservable constant(double c);
    static GroundObservable count(std::uint32_t atom_mask);
    static GroundObservable count_atom(std::size_t atom) {
        return count(std::uint32_t{1} << atom);
    }
    /// I1(f) = sum_i f_i N_i - sum_i f_i lambda_i (centering fixed by the
    /// ground the observable is evaluated against).
    static GroundObservable i1(std::vector<double> values);
    static GroundObservable sum(std::vector<GroundObservable> xs);
    static GroundObservable product(std::vector<GroundObservable> xs);
    static GroundObservable scale(double c, GroundObservable x);

    double eval(std::span<const int> counts, std::span<const std::size_t> extras,
                const FiniteGround& ground) const;

    /// Majorant |F(k)| <= bound * prod_i (1 + k_i)^degree, used for the
    /// rigorous truncation remainder.
    struct Majorant {
        double bound = 0.0;
        int degree = 0;
    };
    Majorant majorant(const FiniteGround& ground) const;

    struct Node;
    const Node& node() const { return *node_; }

  private:
    explicit GroundObservable(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct ExactExpectation {
    double value = 0.0;
    double remainder_bound = 0.0;  // rigorous bound on the truncated mass
};

/// E[F(nu + sum of extras)] by exhaustive enumeration of count vectors in
/// [0, count_cap]^m with compensated summation in a fixed order.
ExactExpectation exact_expect(const GroundObservable& f, const FiniteGround& ground,
                              std::span<const std::size_t> extras = {});

/// E[A(nu + extras_a) * B(nu + extras_b)] by the same enumeration.
ExactExpectation exact_expect_product(const GroundObservable& a,
                                      std::span<const std::size_t> extras_a,
                                      const GroundObservable& b,
                                      std::span<const std::size_t> extras_b,
                                      const FiniteGround& ground);

struct MeckeOracleReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double lhs_bound = 0.0;
    double rhs_bound = 0.0;
    double difference() const;
    double combined_bound() const { return lhs_bound + rhs_bound; }
    bool holds() const { return difference() <= combined_bound(); }
};

/// Discrete Mecke identity with h(nu, x_i) = g(nu) f_i:
/// E[sum_i N_i g(nu) f_i] = sum_i lambda_i f_i E[g(nu + delta_i)].
MeckeOracleReport oracle_mecke(const GroundObservable& g, const std::vector<double>& f,
                               const FiniteGround& ground);

struct ProjectionEntry {
    std::vector<std::size_t> points;
    double value = 0.0;
    double remainder_bound = 0.0;
};

/// Exact P_n F = E[D^n F] for every tuple of ground atoms, computed by the
/// inclusion-exclusion expansion of the iterated difference.
std::vector<ProjectionEntry> oracle_projection(const GroundObservable& f, int order,
                                               const FiniteGround& ground);

struct OrthogonalityReport {
    double inner_product = 0.0;
    double bound = 0.0;
    /// E[(D^1_a G) * G] per ground atom.
    std::vector<double> diff_inner_products;
    std::vector<double> diff_bounds;
};

/// Exact E[F * G], plus the first-difference orthogonality step
/// E[(D^1_a G) * G] = 0 used with chaos annihilation.
OrthogonalityReport oracle_chaos_orthogonality(const GroundObservable& f,
                                               const GroundObservable& g,
                                               const FiniteGround& ground);

/// Interpret a tower observable on the ground set whose atom i is the cell
/// C(i) x [1,1]. Every region and simple-function rectangle must cover each
/// cell entirely or not at all.
GroundObservable compile_to_ground(const Observable& f, const FiniteGround& ground,
                                   const GrowthSpec& spec);

/// Per-atom values of a simple function on the ground cells.
std::vector<double> ground_values(const SimpleFunction& f, const FiniteGround& ground,
                                  const GrowthSpec& spec);

}  // namespace suspension
