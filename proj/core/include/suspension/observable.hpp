#pragma once

#include "suspension/point_process.hpp"
#include "suspension/region.hpp"

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace suspension {

/// Step function sum_i coeff_i * 1_{rect_i} with pairwise disjoint
/// rectangles; automatically in L1 ∩ L2 and with exactly computable
/// integral.
class SimpleFunction {
  public:
    struct Term {
        double coeff;
        Rectangle rect;
    };

    SimpleFunction() = default;
    explicit SimpleFunction(std::vector<Term> terms);

    static SimpleFunction indicator(Rectangle rect) {
        return SimpleFunction({Term{1.0, std::move(rect)}});
    }

    const std::vector<Term>& terms() const { return terms_; }
    double value_at(const TowerPoint& p) const;
    /// Exact dyadic integral sum_i coeff_i * measure(rect_i), as a double.
    double integral() const;
    std::string key() const;

  private:
    std::vector<Term> terms_;
};

/// Polynomial observable on counting measures, closed under the difference
/// calculus: constants, counts N(A), first integrals I1(f), sums, products
/// and scalar multiples.
class Observable {
  public:
    Observable() : Observable(constant(0.0)) {}

    static Observable constant(double c);
    static Observable count(RegionSet region);
    static Observable i1(SimpleFunction f);
    static Observable sum(std::vector<Observable> xs);
    static Observable product(std::vector<Observable> xs);
    static Observable scale(double c, Observable x);

    /// Evaluate at nu + sum of Dirac atoms over `extra`.
    double eval(std::span<const TowerPoint> atoms, std::span<const TowerPoint> extra = {}) const;
    double eval(const CountingMeasure& nu, std::span<const TowerPoint> extra = {}) const;

    /// Structure of the tree, for inspection in tests.
    bool is_constant(double* value = nullptr) const;

    struct Node;
    const Node& node() const { return *node_; }

  private:
    explicit Observable(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct Observable::Node {
    enum class Kind { Const, Count, I1, Sum, Product, Scale };
    Kind kind = Kind::Const;
    double value = 0.0;  // Const value or Scale factor
    RegionSet region;
    SimpleFunction func;
    double func_integral = 0.0;  // cached for I1
    std::vector<Observable> children;
};

Observable operator+(Observable a, Observable b);
Observable operator-(Observable a, Observable b);
Observable operator*(Observable a, Observable b);
Observable operator*(double c, Observable x);

/// D^1_y F = F(. + delta_y) - F(.), computed by exact structural rules:
/// counts and first integrals difference to constants, products expand by
/// the discrete Leibniz rule. The result is simplified.
Observable diff1(const Observable& f, const TowerPoint& y);

/// Iterated difference D^n, symmetric in the points.
Observable diffn(const Observable& f, std::span<const TowerPoint> ys);

/// Normal form: polynomial in the primitive factors N(A), I1(f) with
/// combined monomials. Two observables are structurally equal iff their
/// normal forms match coefficient-wise.
struct Polynomial {
    // monomial: sorted (primitive key, power) pairs -> coefficient
    std::map<std::vector<std::pair<std::string, int>>, double> monomials;

    bool same_as(const Polynomial& other, double tol = 1e-12) const;
};
Polynomial normal_form(const Observable& f);

struct ProjectionEstimate {
    int order = 0;
    double estimate = 0.0;
    double standard_error = 0.0;
    std::uint64_t trials = 0;
};

/// Monte Carlo chaos projection P_n F(y_1..y_n) = E[D^n F] over Poisson
/// samples of the region. Order 0 is the plain expectation.
ProjectionEstimate project_n(const Observable& f, std::span<const TowerPoint> ys,
                             const RegionSet& region, const GrowthSpec& spec,
                             std::uint64_t trials, const StreamId& stream, unsigned threads = 1);

struct MeckeReport {
    double lhs = 0.0;
    double se_lhs = 0.0;
    double rhs = 0.0;
    double se_rhs = 0.0;
    double z = 0.0;
    std::uint64_t trials = 0;
};

/// Monte Carlo test of Mecke's identity with h(nu, x) = g(nu) f(x):
/// E[sum_{x in nu} g(nu) f(x)]  vs  int E[g(nu + delta_x)] f(x) mu(dx).
/// The two sides run on independent sample streams; z scores their
/// difference.
MeckeReport mecke_check(const Observable& g, const SimpleFunction& f, const RegionSet& region,
                        const GrowthSpec& spec, std::uint64_t trials, const StreamId& stream,
                        unsigned threads = 1);

}  // namespace suspension
