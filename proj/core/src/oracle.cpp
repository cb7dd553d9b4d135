#include "suspension/oracle.hpp"

#include "suspension/errors.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace suspension {

namespace {

constexpr int kSeriesTerms = 600;  // Poisson series summed to cap + this; the
                                   // pmf underflows to 0.0 far earlier for
                                   // every usable lambda.

std::vector<std::vector<double>> pmf_tables(const FiniteGround& ground) {
    std::vector<std::vector<double>> pmf(ground.size());
    for (std::size_t i = 0; i < ground.size(); ++i) {
        double lam = ground.lambda[i];
        if (!(lam > 0.0)) throw std::invalid_argument("ground masses must be positive");
        pmf[i].resize(static_cast<std::size_t>(ground.count_cap) + 1);
        double p = std::exp(-lam);
        for (int k = 0; k <= ground.count_cap; ++k) {
            pmf[i][static_cast<std::size_t>(k)] = p;
            p *= lam / (k + 1);
        }
    }
    return pmf;
}

double poisson_pmf(double lam, int k) {
    double p = std::exp(-lam);
    for (int j = 1; j <= k; ++j) p *= lam / j;
    return p;
}

/// E[(1+N)^degree] and its tail beyond the cap, summed termwise.
double poisson_moment(double lam, int degree, int from_k) {
    double total = 0.0;
    double p = poisson_pmf(lam, from_k);
    for (int k = from_k; k <= from_k + kSeriesTerms; ++k) {
        total += std::pow(1.0 + k, degree) * p;
        p *= lam / (k + 1);
    }
    return total;
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

void check_enumerable(const FiniteGround& ground) {
    if (ground.size() == 0) throw std::invalid_argument("ground set is empty");
    if (ground.size() > 16) throw EnumerationTooLarge("ground set larger than 16 atoms");
    if (ground.count_cap < 1) throw std::invalid_argument("count_cap must be >= 1");
    double states = std::pow(ground.count_cap + 1.0, static_cast<double>(ground.size()));
    if (states > 2e8) {
        throw EnumerationTooLarge("state space has " + std::to_string(states) + " vectors");
    }
}

}  // namespace

double FiniteGround::tail_probability() const {
    double total = 0.0;
    for (double lam : lambda) total += poisson_moment(lam, 0, count_cap + 1);
    return total;
}

struct GroundObservable::Node {
    enum class Kind { Const, Count, I1, Sum, Product, Scale };
    Kind kind = Kind::Const;
    double value = 0.0;
    std::uint32_t mask = 0;
    std::vector<double> values;
    std::vector<GroundObservable> children;
};

GroundObservable GroundObservable::constant(double c) {
    auto node = std::make_shared<Node>();
    node->kind = Node::Kind::Const;
    node->value = c;
    return GroundObservable(std::move(node));
}

GroundObservable GroundObservable::count(std::uint32_t atom_mask) {
    auto node = std::make_shared<Node>();
    node->kind = Node::Kind::Count;
    node->mask = atom_mask;
    return GroundObservable(std::move(node));
}

GroundObservable GroundObservable::i1(std::vector<double> values) {
    auto node = std::make_shared<Node>();
    node->kind = Node::Kind::I1;
    node->values = std::move(values);
    return GroundObservable(std::move(node));
}

GroundObservable GroundObservable::sum(std::vector<GroundObservable> xs) {
    auto node = std::make_shared<Node>();
    node->kind = Node::Kind::Sum;
    node->children = std::move(xs);
    return GroundObservable(std::move(node));
}

GroundObservable GroundObservable::product(std::vector<GroundObservable> xs) {
    auto node = std::make_shared<Node>();
    node->kind = Node::Kind::Product;
    node->children = std::move(xs);
    return GroundObservable(std::move(node));
}

GroundObservable GroundObservable::scale(double c, GroundObservable x) {
    auto node = std::make_shared<Node>();
    node->kind = Node::Kind::Scale;
    node->value = c;
    node->children.push_back(std::move(x));
    return GroundObservable(std::move(node));
}

double GroundObservable::eval(std::span<const int> counts, std::span<const std::size_t> extras,
                              const FiniteGround& ground) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Node::Kind::Const:
            return n.value;
        case Node::Kind::Count: {
            long total = 0;
            for (std::size_t i = 0; i < counts.size(); ++i) {
                if (n.mask & (std::uint32_t{1} << i)) total += counts[i];
            }
            for (std::size_t e : extras) {
                if (n.mask & (std::uint32_t{1} << e)) ++total;
            }
            return static_cast<double>(total);
        }
        case Node::Kind::I1: {
            double s = 0.0;
            for (std::size_t i = 0; i < n.values.size() && i < counts.size(); ++i) {
                s += n.values[i] * (counts[i] - ground.lambda[i]);
            }
            for (std::size_t e : extras) {
                if (e < n.values.size()) s += n.values[e];
            }
            return s;
        }
        case Node::Kind::Sum: {
            double s = 0.0;
            for (const GroundObservable& c : n.children) s += c.eval(counts, extras, ground);
            return s;
        }
        case Node::Kind::Product: {
            double s = 1.0;
            for (const GroundObservable& c : n.children) s *= c.eval(counts, extras, ground);
            return s;
        }
        case Node::Kind::Scale:
            return n.value * n.children.front().eval(counts, extras, ground);
    }
    return 0.0;
}

GroundObservable::Majorant GroundObservable::majorant(const FiniteGround& ground) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Node::Kind::Const:
            return {std::abs(n.value), 0};
        case Node::Kind::Count: {
            int atoms = std::popcount(n.mask);
            return {static_cast<double>(std::max(atoms, 1)), atoms > 0 ? 1 : 0};
        }
        case Node::Kind::I1: {
            double coeff_sum = 0.0;
            double centering = 0.0;
            for (std::size_t i = 0; i < n.values.size(); ++i) {
                coeff_sum += std::abs(n.values[i]);
                centering += n.values[i] * (i < ground.lambda.size() ? ground.lambda[i] : 0.0);
            }
            return {coeff_sum + std::abs(centering), 1};
        }
        case Node::Kind::Sum: {
            Majorant m{0.0, 0};
            for (const GroundObservable& c : n.children) {
                Majorant cm = c.majorant(ground);
                m.bound += cm.bound;
                m.degree = std::max(m.degree, cm.degree);
            }
            return m;
        }
        case Node::Kind::Product: {
            Majorant m{1.0, 0};
            for (const GroundObservable& c : n.children) {
                Majorant cm = c.majorant(ground);
                m.bound *= cm.bound;
                m.degree += cm.degree;
            }
            return m;
        }
        case Node::Kind::Scale: {
            Majorant m = n.children.front().majorant(ground);
            m.bound *= std::abs(n.value);
            return m;
        }
    }
    return {0.0, 0};
}

namespace {

/// Remainder of E over the states outside [0,cap]^m for an integrand
/// bounded by M * prod (1+k_i)^D: union bound over the coordinate that
/// escapes, full moments elsewhere.
double truncation_remainder(const FiniteGround& ground, GroundObservable::Majorant maj,
                            std::size_t extra_atoms) {
    double m_ex = maj.bound * std::pow(2.0, static_cast<double>(maj.degree) *
                                                static_cast<double>(extra_atoms));
    std::vector<double> full_moment(ground.size());
    std::vector<double> tail_moment(ground.size());
    for (std::size_t i = 0; i < ground.size(); ++i) {
        full_moment[i] = poisson_moment(ground.lambda[i], maj.degree, 0);
        tail_moment[i] = poisson_moment(ground.lambda[i], maj.degree, ground.count_cap + 1);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < ground.size(); ++i) {
        double product = tail_moment[i];
        for (std::size_t j = 0; j < ground.size(); ++j) {
            if (j != i) product *= full_moment[j];
        }
        total += product;
    }
    return m_ex * total;
}

template <typename Eval>
double enumerate_states(const FiniteGround& ground, Eval&& integrand) {
    auto pmf = pmf_tables(ground);
    std::vector<int> counts(ground.size(), 0);
    Kahan acc;
    // Depth-first product measure walk in lexicographic order.
    auto rec = [&](auto&& self, std::size_t coord, double prob) -> void {
        if (coord == ground.size()) {
            acc.add(integrand(counts) * prob);
            return;
        }
        for (int k = 0; k <= ground.count_cap; ++k) {
            counts[coord] = k;
            self(self, coord + 1, prob * pmf[coord][static_cast<std::size_t>(k)]);
        }
        counts[coord] = 0;
    };
    rec(rec, 0, 1.0);
    return acc.sum;
}

}  // namespace

ExactExpectation exact_expect(const GroundObservable& f, const FiniteGround& ground,
                              std::span<const std::size_t> extras) {
    check_enumerable(ground);
    for (std::size_t e : extras) {
        if (e >= ground.size()) throw std::invalid_argument("extra atom beyond ground set");
    }
    ExactExpectation out;
    out.value = enumerate_states(ground, [&](const std::vector<int>& counts) {
        return f.eval(counts, extras, ground);
    });
    out.remainder_bound = truncation_remainder(ground, f.majorant(ground), extras.size());
    return out;
}

ExactExpectation exact_expect_product(const GroundObservable& a,
                                      std::span<const std::size_t> extras_a,
                                      const GroundObservable& b,
                                      std::span<const std::size_t> extras_b,
                                      const FiniteGround& ground) {
    check_enumerable(ground);
    ExactExpectation out;
    out.value = enumerate_states(ground, [&](const std::vector<int>& counts) {
        return a.eval(counts, extras_a, ground) * b.eval(counts, extras_b, ground);
    });
    GroundObservable::Majorant ma = a.majorant(ground);
    GroundObservable::Majorant mb = b.majorant(ground);
    GroundObservable::Majorant combined{
        ma.bound * std::pow(2.0, static_cast<double>(ma.degree) * extras_a.size()) *
            mb.bound * std::pow(2.0, static_cast<double>(mb.degree) * extras_b.size()),
        ma.degree + mb.degree};
    out.remainder_bound = truncation_remainder(ground, combined, 0);
    return out;
}

double MeckeOracleReport::difference() const { return std::abs(lhs - rhs); }

MeckeOracleReport oracle_mecke(const GroundObservable& g, const std::vector<double>& f,
                               const FiniteGround& ground) {
    if (f.size() != ground.size()) throw std::invalid_argument("f needs one value per atom");
    // LHS observable: sum_i f_i N_i g(nu).
    std::vector<GroundObservable> terms;
    for (std::size_t i = 0; i < ground.size(); ++i) {
        if (f[i] == 0.0) continue;
        terms.push_back(GroundObservable::scale(
            f[i], GroundObservable::product({GroundObservable::count_atom(i), g})));
    }
    MeckeOracleReport report;
    if (!terms.empty()) {
        ExactExpectation lhs = exact_expect(GroundObservable::sum(std::move(terms)), ground);
        report.lhs = lhs.value;
        report.lhs_bound = lhs.remainder_bound;
    }
    for (std::size_t i = 0; i < ground.size(); ++i) {
        if (f[i] == 0.0) continue;
        std::size_t extra[1] = {i};
        ExactExpectation e = exact_expect(g, ground, extra);
        report.rhs += ground.lambda[i] * f[i] * e.value;
        report.rhs_bound += std::abs(ground.lambda[i] * f[i]) * e.remainder_bound;
    }
    return report;
}

std::vector<ProjectionEntry> oracle_projection(const GroundObservable& f, int order,
                                               const FiniteGround& ground) {
    if (order < 0 || order > 3) throw EnumerationTooLarge("projection order supported up to 3");
    std::size_t m = ground.size();
    std::vector<ProjectionEntry> table;
    std::vector<std::size_t> tuple(static_cast<std::size_t>(order), 0);
    auto next_tuple = [&]() -> bool {
        for (std::size_t i = tuple.size(); i-- > 0;) {
            if (++tuple[i] < m) return true;
            tuple[i] = 0;
        }
        return false;
    };
    do {
        ProjectionEntry entry;
        entry.points = tuple;
        // D^n expands to sum over subsets S of the added atoms with sign
        // (-1)^{n - |S|}.
        std::uint32_t subsets = std::uint32_t{1} << order;
        for (std::uint32_t s = 0; s < subsets; ++s) {
            std::vector<std::size_t> extras;
            for (int b = 0; b < order; ++b) {
                if (s & (std::uint32_t{1} << b)) extras.push_back(tuple[static_cast<std::size_t>(b)]);
            }
            ExactExpectation e = exact_expect(f, ground, extras);
            double sign = ((order - std::popcount(s)) % 2 == 0) ? 1.0 : -1.0;
            entry.value += sign * e.value;
            entry.remainder_bound += e.remainder_bound;
        }
        table.push_back(std::move(entry));
    } while (order > 0 && next_tuple());
    return table;
}

OrthogonalityReport oracle_chaos_orthogonality(const GroundObservable& f,
                                               const GroundObservable& g,
                                               const FiniteGround& ground) {
    OrthogonalityReport report;
    ExactExpectation inner = exact_expect_product(f, {}, g, {}, ground);
    report.inner_product = inner.value;
    report.bound = inner.remainder_bound;
    ExactExpectation base = exact_expect_product(g, {}, g, {}, ground);
    for (std::size_t a = 0; a < ground.size(); ++a) {
        std::size_t extra[1] = {a};
        ExactExpectation shifted = exact_expect_product(g, extra, g, {}, ground);
        report.diff_inner_products.push_back(shifted.value - base.value);
        report.diff_bounds.push_back(shifted.remainder_bound + base.remainder_bound);
    }
    return report;
}

namespace {

Rectangle ground_cell(std::size_t atom) {
    return Rectangle{Column::column_class(static_cast<int>(atom)), 1, 1};
}

enum class CellPosition { Inside, Outside, Straddling };

CellPosition cell_position(const Rectangle& cell, const RegionSet& region) {
    RegionSet cell_region = RegionSet::of(cell);
    if (region_intersect(cell_region, region).is_empty()) return CellPosition::Outside;
    if (region_subtract(cell_region, region).is_empty()) return CellPosition::Inside;
    return CellPosition::Straddling;
}

}  // namespace

std::vector<double> ground_values(const SimpleFunction& f, const FiniteGround& ground,
                                  const GrowthSpec&) {
    std::vector<double> values(ground.size(), 0.0);
    for (std::size_t i = 0; i < ground.size(); ++i) {
        Rectangle cell = ground_cell(i);
        for (const SimpleFunction::Term& t : f.terms()) {
            switch (cell_position(cell, RegionSet::of(t.rect))) {
                case CellPosition::Inside:
                    values[i] += t.coeff;
                    break;
                case CellPosition::Outside:
                    break;
                case CellPosition::Straddling:
                    throw std::invalid_argument(
                        "simple function term straddles a ground cell");
            }
        }
    }
    return values;
}

GroundObservable compile_to_ground(const Observable& f, const FiniteGround& ground,
                                   const GrowthSpec& spec) {
    using Node = Observable::Node;
    const Node& n = f.node();
    switch (n.kind) {
        case Node::Kind::Const:
            return GroundObservable::constant(n.value);
        case Node::Kind::Count: {
            std::uint32_t mask = 0;
            for (std::size_t i = 0; i < ground.size(); ++i) {
                switch (cell_position(ground_cell(i), n.region)) {
                    case CellPosition::Inside:
                        mask |= std::uint32_t{1} << i;
                        break;
                    case CellPosition::Outside:
                        break;
                    case CellPosition::Straddling:
                        throw std::invalid_argument("count region straddles a ground cell");
                }
            }
            return GroundObservable::count(mask);
        }
        case Node::Kind::I1:
            return GroundObservable::i1(ground_values(n.func, ground, spec));
        case Node::Kind::Sum: {
            std::vector<GroundObservable> xs;
            xs.reserve(n.children.size());
            for (const Observable& c : n.children) xs.push_back(compile_to_ground(c, ground, spec));
            return GroundObservable::sum(std::move(xs));
        }
        case Node::Kind::Product: {
            std::vector<GroundObservable> xs;
            xs.reserve(n.children.size());
            for (const Observable& c : n.children) xs.push_back(compile_to_ground(c, ground, spec));
            return GroundObservable::product(std::move(xs));
        }
        case Node::Kind::Scale:
            return GroundObservable::scale(n.value,
                                           compile_to_ground(n.children.front(), ground, spec));
    }
    return GroundObservable::constant(0.0);
}

}  // namespace suspension
