#include "suspension/observable.hpp"

#include "suspension/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace suspension {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

SimpleFunction::SimpleFunction(std::vector<Term> terms) : terms_(std::move(terms)) {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        for (std::size_t j = i + 1; j < terms_.size(); ++j) {
            const Rectangle& a = terms_[i].rect;
            const Rectangle& b = terms_[j].rect;
            if (relate(a.column, b.column) != ColumnRelation::Disjoint &&
                std::max(a.lo, b.lo) <= std::min(a.hi, b.hi)) {
                throw std::invalid_argument("simple function terms must have disjoint rectangles");
            }
        }
    }
}

double SimpleFunction::value_at(const TowerPoint& p) const {
    for (const Term& t : terms_) {
        if (t.rect.contains(p)) return t.coeff;
    }
    return 0.0;
}

double SimpleFunction::integral() const {
    double total = 0.0;
    for (const Term& t : terms_) total += t.coeff * t.rect.measure().to_double();
    return total;
}

std::string SimpleFunction::key() const {
    std::string key;
    for (const Term& t : terms_) {
        key += format_double(t.coeff);
        key += '@';
        key += t.rect.column.bit_string();
        key += ':';
        key += t.rect.lo.str();
        key += ':';
        key += t.rect.hi.str();
        key += ';';
    }
    return key;
}

Observable Observable::constant(double c) {
    auto node = std::make_shared<Node>();
    node->kind = Node::Kind::Const;
    node->value = c;
    return Observable(std::move(node));
}

Observable Observable::count(RegionSet region) {
    auto node = std::make_shared<Node>();
    node->kind = Node::Kind::Count;
    node->region = std::move(region);
    return Observable(std::move(node));
}

Observable Observable::i1(SimpleFunction f) {
    auto node = std::make_shared<Node>();
    node->kind = Node::Kind::I1;
    node->func_integral = f.integral();
    node->func = std::move(f);
    return Observable(std::move(node));
}

Observable Observable::sum(std::vector<Observable> xs) {
    // Flatten, fold constants, drop zeros.
    std::vector<Observable> flat;
    double constant_part = 0.0;
    for (Observable& x : xs) {
        const Node& n = x.node();
        if (n.kind == Node::Kind::Const) {
            constant_part += n.value;
        } else if (n.kind == Node::Kind::Sum) {
            for (const Observable& c : n.children) {
                const Node& cn = c.node();
                if (cn.kind == Node::Kind::Const) {
                    constant_part += cn.value;
                } else {
                    flat.push_back(c);
                }
            }
        } else {
            flat.push_back(std::move(x));
        }
    }
    if (constant_part != 0.0) flat.push_back(constant(constant_part));
    if (flat.empty()) return constant(0.0);
    if (flat.size() == 1) return flat.front();
    auto node = std::make_shared<Node>();
    node->kind = Node::Kind::Sum;
    node->children = std::move(flat);
    return Observable(std::move(node));
}

Observable Observable::product(std::vector<Observable> xs) {
    std::vector<Observable> flat;
    double factor = 1.0;
    for (Observable& x : xs) {
        const Node& n = x.node();
        if (n.kind == Node::Kind::Const) {
            factor *= n.value;
        } else if (n.kind == Node::Kind::Product) {
            for (const Observable& c : n.children) flat.push_back(c);
        } else if (n.kind == Node::Kind::Scale) {
            factor *= n.value;
            flat.push_back(n.children.front());
        } else {
            flat.push_back(std::move(x));
        }
    }
    if (factor == 0.0) return constant(0.0);
    Observable core = constant(factor);
    if (!flat.empty()) {
        if (flat.size() == 1) {
            core = flat.front();
        } else {
            auto node = std::make_shared<Node>();
            node->kind = Node::Kind::Product;
            node->children = std::move(flat);
            core = Observable(std::move(node));
        }
        if (factor != 1.0) core = scale(factor, std::move(core));
    }
    return core;
}

Observable Observable::scale(double c, Observable x) {
    const Node& n = x.node();
    if (c == 0.0) return constant(0.0);
    if (c == 1.0) return x;
    if (n.kind == Node::Kind::Const) return constant(c * n.value);
    if (n.kind == Node::Kind::Scale) return scale(c * n.value, n.children.front());
    auto node = std::make_shared<Node>();
    node->kind = Node::Kind::Scale;
    node->value = c;
    node->children.push_back(std::move(x));
    return Observable(std::move(node));
}

bool Observable::is_constant(double* value) const {
    if (node_->kind != Node::Kind::Const) return false;
    if (value != nullptr) *value = node_->value;
    return true;
}

double Observable::eval(std::span<const TowerPoint> atoms, std::span<const TowerPoint> extra) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Node::Kind::Const:
            return n.value;
        case Node::Kind::Count: {
            std::size_t c = 0;
            for (const TowerPoint& p : atoms) c += n.region.contains(p) ? 1 : 0;
            for (const TowerPoint& p : extra) c += n.region.contains(p) ? 1 : 0;
            return static_cast<double>(c);
        }
        case Node::Kind::I1: {
            double s = -n.func_integral;
            for (const TowerPoint& p : atoms) s += n.func.value_at(p);
            for (const TowerPoint& p : extra) s += n.func.value_at(p);
            return s;
        }
        case Node::Kind::Sum: {
            double s = 0.0;
            for (const Observable& c : n.children) s += c.eval(atoms, extra);
            return s;
        }
        case Node::Kind::Product: {
            double s = 1.0;
            for (const Observable& c : n.children) s *= c.eval(atoms, extra);
            return s;
        }
        case Node::Kind::Scale:
            return n.value * n.children.front().eval(atoms, extra);
    }
    return 0.0;
}

double Observable::eval(const CountingMeasure& nu, std::span<const TowerPoint> extra) const {
    return eval(std::span<const TowerPoint>(nu.atoms), extra);
}

Observable operator+(Observable a, Observable b) {
    return Observable::sum({std::move(a), std::move(b)});
}

Observable operator-(Observable a, Observable b) {
    return Observable::sum({std::move(a), Observable::scale(-1.0, std::move(b))});
}

Observable operator*(Observable a, Observable b) {
    return Observable::product({std::move(a), std::move(b)});
}

Observable operator*(double c, Observable x) {
    return Observable::scale(c, std::move(x));
}

Observable diff1(const Observable& f, const TowerPoint& y) {
    using Node = Observable::Node;
    const Node& n = f.node();
    switch (n.kind) {
        case Node::Kind::Const:
            return Observable::constant(0.0);
        case Node::Kind::Count:
            return Observable::constant(n.region.contains(y) ? 1.0 : 0.0);
        case Node::Kind::I1:
            return Observable::constant(n.func.value_at(y));
        case Node::Kind::Sum: {
            std::vector<Observable> parts;
            parts.reserve(n.children.size());
            for (const Observable& c : n.children) parts.push_back(diff1(c, y));
            return Observable::sum(std::move(parts));
        }
        case Node::Kind::Scale:
            return Observable::scale(n.value, diff1(n.children.front(), y));
        case Node::Kind::Product: {
            // Discrete Leibniz rule, folded pairwise:
            // D(FG) = DF * G + F * DG + DF * DG.
            Observable rest = (n.children.size() == 2)
                                  ? n.children[1]
                                  : Observable::product(std::vector<Observable>(
                                        n.children.begin() + 1, n.children.end()));
            const Observable& head = n.children.front();
            Observable d_head = diff1(head, y);
            Observable d_rest = diff1(rest, y);
            return Observable::sum({Observable::product({d_head, rest}),
                                    Observable::product({head, d_rest}),
                                    Observable::product({d_head, d_rest})});
        }
    }
    return Observable::constant(0.0);
}

Observable diffn(const Observable& f, std::span<const TowerPoint> ys) {
    Observable g = f;
    for (const TowerPoint& y : ys) g = diff1(g, y);
    return g;
}

namespace {

using Monomial = std::vector<std::pair<std::string, int>>;

Monomial merge_monomials(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

Polynomial poly_product(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a.monomials) {
        for (const auto& [mb, cb] : b.monomials) {
            out.monomials[merge_monomials(ma, mb)] += ca * cb;
        }
    }
    return out;
}

}  // namespace

Polynomial normal_form(const Observable& f) {
    using Node = Observable::Node;
    const Node& n = f.node();
    Polynomial out;
    switch (n.kind) {
        case Node::Kind::Const:
            out.monomials[{}] = n.value;
            break;
        case Node::Kind::Count:
            out.monomials[{{"N:" + n.region.canonical_key(), 1}}] = 1.0;
            break;
        case Node::Kind::I1:
            out.monomials[{{"I1:" + n.func.key(), 1}}] = 1.0;
            break;
        case Node::Kind::Sum:
            for (const Observable& c : n.children) {
                Polynomial p = normal_form(c);
                for (const auto& [m, coeff] : p.monomials) out.monomials[m] += coeff;
            }
            break;
        case Node::Kind::Scale: {
            out = normal_form(n.children.front());
            for (auto& [m, coeff] : out.monomials) coeff *= n.value;
            break;
        }
        case Node::Kind::Product: {
            out.monomials[{}] = 1.0;
            for (const Observable& c : n.children) out = poly_product(out, normal_form(c));
            break;
        }
    }
    std::erase_if(out.monomials, [](const auto& kv) { return kv.second == 0.0; });
    return out;
}

bool Polynomial::same_as(const Polynomial& other, double tol) const {
    auto covered = [tol](const Polynomial& a, const Polynomial& b) {
        for (const auto& [m, coeff] : a.monomials) {
            auto it = b.monomials.find(m);
            double theirs = (it == b.monomials.end()) ? 0.0 : it->second;
            if (std::abs(coeff - theirs) > tol) return false;
        }
        return true;
    };
    return covered(*this, other) && covered(other, *this);
}

namespace {

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe summarize(const std::vector<double>& values) {
    MeanSe out;
    if (values.empty()) return out;
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / static_cast<double>(values.size());
    if (values.size() < 2) return out;
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    double var = ss / static_cast<double>(values.size() - 1);
    out.se = std::sqrt(var / static_cast<double>(values.size()));
    return out;
}

}  // namespace

ProjectionEstimate project_n(const Observable& f, std::span<const TowerPoint> ys,
                             const RegionSet& region, const GrowthSpec& spec,
                             std::uint64_t trials, const StreamId& stream, unsigned threads) {
    if (trials < 2) throw std::invalid_argument("projection estimate needs at least 2 trials");
    Observable g = diffn(f, ys);
    std::vector<double> values(trials);
    run_trials(trials, threads, [&](std::uint64_t t) {
        CountingMeasure nu = sample_poisson(region, spec, stream.child(stream_tag::kTrial, t));
        values[t] = g.eval(nu);
    });
    MeanSe stats = summarize(values);
    ProjectionEstimate est;
    est.order = static_cast<int>(ys.size());
    est.estimate = stats.mean;
    est.standard_error = stats.se;
    est.trials = trials;
    return est;
}

MeckeReport mecke_check(const Observable& g, const SimpleFunction& f, const RegionSet& region,
                        const GrowthSpec& spec, std::uint64_t trials, const StreamId& stream,
                        unsigned threads) {
    if (trials < 2) throw std::invalid_argument("mecke check needs at least 2 trials");
    std::vector<double> lhs(trials);
    std::vector<double> rhs(trials);
    std::vector<double> term_mass(f.terms().size());
    for (std::size_t i = 0; i < f.terms().size(); ++i) {
        term_mass[i] = f.terms()[i].rect.measure().to_double();
    }
    run_trials(trials, threads, [&](std::uint64_t t) {
        StreamId base = stream.child(stream_tag::kTrial, t);
        {
            CountingMeasure nu = sample_poisson(region, spec, base.child(stream_tag::kSide, 0));
            double fsum = 0.0;
            for (const TowerPoint& x : nu.atoms) fsum += f.value_at(x);
            lhs[t] = g.eval(nu) * fsum;
        }
        {
            CountingMeasure nu = sample_poisson(region, spec, base.child(stream_tag::kSide, 1));
            StreamId aux = base.child(stream_tag::kSide, 2);
            double total = 0.0;
            for (std::size_t i = 0; i < f.terms().size(); ++i) {
                TowerPoint x = sample_point_in(f.terms()[i].rect, spec,
                                               aux.child(stream_tag::kAux, i));
                total += f.terms()[i].coeff * term_mass[i] * g.eval(nu, std::span(&x, 1));
            }
            rhs[t] = total;
        }
    });
    MeanSe l = summarize(lhs);
    MeanSe r = summarize(rhs);
    MeckeReport report;
    report.lhs = l.mean;
    report.se_lhs = l.se;
    report.rhs = r.mean;
    report.se_rhs = r.se;
    report.trials = trials;
    double denom = std::sqrt(l.se * l.se + r.se * r.se);
    report.z = (denom > 0.0) ? (l.mean - r.mean) / denom : (l.mean == r.mean ? 0.0 : INFINITY);
    return report;
}

}  // namespace suspension
