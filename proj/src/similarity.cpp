#include "multikit/similarity.hpp"

#include "multikit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace multikit {

std::string to_string(SimilarityKind kind) {
    switch (kind) {
    case SimilarityKind::Jaccard: return "jaccard";
    case SimilarityKind::CosineL2: return "cosine_l2";
    case SimilarityKind::CosineSum: return "cosine_sum";
    case SimilarityKind::CosineIntersection: return "cosine_intersection";
    case SimilarityKind::CommonProduct: return "common_product";
    case SimilarityKind::SupProduct: return "sup_product";
    }
    return "unknown";
}

double mproduct_value(double a, double b) {
    if (a == 0.0 || b == 0.0)
        return 0.0;
    double m = std::min(std::abs(a), std::abs(b));
    return (a > 0.0) == (b > 0.0) ? m : -m;
}

MFunction mproduct(const MFunction& f, const MFunction& g) {
    if (!(f.grid() == g.grid()))
        throw AlignmentError("grid mismatch");
    std::vector<double> s(f.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = mproduct_value(f[i], g[i]);
    return MFunction(f.grid(), std::move(s));
}

namespace {

// Fold fn(m_a(x), m_b(x)) over the union of the two supports, in element
// order; accumulation order is then independent of the argument order.
template <typename Fn>
void for_each_pair(const Mset& a, const Mset& b, Fn&& fn) {
    auto ia = a.entries().begin(), ea = a.entries().end();
    auto ib = b.entries().begin(), eb = b.entries().end();
    while (ia != ea || ib != eb) {
        if (ib == eb || (ia != ea && ia->first < ib->first)) {
            fn(ia->second, 0.0);
            ++ia;
        } else if (ia == ea || ib->first < ia->first) {
            fn(0.0, ib->second);
            ++ib;
        } else {
            fn(ia->second, ib->second);
            ++ia;
            ++ib;
        }
    }
}

} // namespace

Mset mproduct(const Mset& a, const Mset& b) {
    Mset::Entries out;
    for (const auto& [x, ma] : a.entries()) {
        double v = mproduct_value(ma, b.multiplicity(x));
        if (v != 0.0)
            out.emplace(x, v);
    }
    return Mset(std::move(out));
}

double common_product(const MFunction& f, const MFunction& g) {
    if (!(f.grid() == g.grid()))
        throw AlignmentError("grid mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        acc += mproduct_value(f[i], g[i]);
    return acc * f.grid().dx;
}

double common_product(const Mset& a, const Mset& b) {
    double acc = 0.0;
    for_each_pair(a, b, [&](double ma, double mb) { acc += mproduct_value(ma, mb); });
    return acc;
}

double sup_product(const MFunction& f, const MFunction& g) {
    if (!(f.grid() == g.grid()))
        throw AlignmentError("grid mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        acc += std::max(std::abs(f[i]), std::abs(g[i]));
    return acc * f.grid().dx;
}

double sup_product(const Mset& a, const Mset& b) {
    double acc = 0.0;
    for_each_pair(a, b, [&](double ma, double mb) {
        acc += std::max(std::abs(ma), std::abs(mb));
    });
    return acc;
}

namespace {

SimilarityReport make_jaccard(double num, double den) {
    SimilarityReport r;
    r.kind = SimilarityKind::Jaccard;
    r.numerator = num;
    r.denominator = den;
    if (den > 0.0) {
        r.value = num / den;
    } else {
        // both inputs identically zero: identical, score 1
        r.value = 1.0;
        r.flags.push_back("indeterminate");
    }
    return r;
}

} // namespace

SimilarityReport jaccard(const MFunction& f, const MFunction& g) {
    return make_jaccard(common_product(f, g), sup_product(f, g));
}

SimilarityReport jaccard(const Mset& a, const Mset& b) {
    return make_jaccard(common_product(a, b), sup_product(a, b));
}

SimilarityReport jaccard_multi(const std::vector<MFunction>& inputs) {
    if (inputs.size() < 2)
        throw std::invalid_argument("jaccard_multi needs at least two inputs");
    for (const auto& f : inputs) {
        if (!(f.grid() == inputs.front().grid()))
            throw AlignmentError("grid mismatch");
        for (double v : f.samples())
            if (v < 0.0)
                throw std::invalid_argument("jaccard_multi requires nonnegative inputs");
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < inputs.front().size(); ++i) {
        double lo = inputs.front()[i], hi = lo;
        for (std::size_t k = 1; k < inputs.size(); ++k) {
            lo = std::min(lo, inputs[k][i]);
            hi = std::max(hi, inputs[k][i]);
        }
        num += lo;
        den += hi;
    }
    double dx = inputs.front().grid().dx;
    return make_jaccard(num * dx, den * dx);
}

SimilarityReport jaccard_multi(const std::vector<Mset>& inputs) {
    if (inputs.size() < 2)
        throw std::invalid_argument("jaccard_multi needs at least two inputs");
    std::set<Element> universe;
    for (const auto& a : inputs) {
        for (const auto& [x, m] : a.entries()) {
            if (m < 0.0)
                throw std::invalid_argument("jaccard_multi requires nonnegative inputs");
            universe.insert(x);
        }
    }
    double num = 0.0, den = 0.0;
    for (const auto& x : universe) {
        double lo = inputs.front().multiplicity(x), hi = lo;
        for (std::size_t k = 1; k < inputs.size(); ++k) {
            double m = inputs[k].multiplicity(x);
            lo = std::min(lo, m);
            hi = std::max(hi, m);
        }
        num += lo;
        den += hi;
    }
    return make_jaccard(num, den);
}

namespace {

struct CosineSums {
    double dot = 0.0;       // sum f*g
    double mdot = 0.0;      // sum mproduct(f, g)
    double sq_f = 0.0, sq_g = 0.0;
    double abs_f = 0.0, abs_g = 0.0;

    void add(double a, double b, double weight) {
        dot += a * b * weight;
        mdot += mproduct_value(a, b) * weight;
        sq_f += a * a * weight;
        sq_g += b * b * weight;
        abs_f += std::abs(a) * weight;
        abs_g += std::abs(b) * weight;
    }
};

SimilarityReport finish_cosine(const CosineSums& s, CosineVariant variant) {
    SimilarityReport r;
    double num = 0.0, den = 0.0;
    switch (variant) {
    case CosineVariant::L2:
        r.kind = SimilarityKind::CosineL2;
        num = s.dot;
        den = std::sqrt(s.sq_f) * std::sqrt(s.sq_g);
        break;
    case CosineVariant::SumNormalized:
        r.kind = SimilarityKind::CosineSum;
        num = s.dot;
        den = s.abs_f * s.abs_g;
        break;
    case CosineVariant::Intersection:
        r.kind = SimilarityKind::CosineIntersection;
        num = s.mdot;
        den = s.abs_f * s.abs_g;
        break;
    }
    if (den == 0.0)
        throw std::invalid_argument("cosine similarity undefined for zero-norm input");
    r.numerator = num;
    r.denominator = den;
    r.value = num / den;
    return r;
}

} // namespace

SimilarityReport cosine(const MFunction& f, const MFunction& g, CosineVariant variant) {
    if (!(f.grid() == g.grid()))
        throw AlignmentError("grid mismatch");
    CosineSums s;
    for (std::size_t i = 0; i < f.size(); ++i)
        s.add(f[i], g[i], f.grid().dx);
    return finish_cosine(s, variant);
}

SimilarityReport cosine(const Mset& a, const Mset& b, CosineVariant variant) {
    CosineSums s;
    for_each_pair(a, b, [&](double ma, double mb) { s.add(ma, mb, 1.0); });
    return finish_cosine(s, variant);
}

} // namespace multikit
