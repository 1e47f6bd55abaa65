#include "multikit/mset.hpp"

#include <algorithm>
#include <stdexcept>

namespace multikit {

Mset::Mset(Entries entries) : entries_(std::move(entries)) {
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (it->second == 0.0)
            it = entries_.erase(it);
        else
            ++it;
    }
}

Mset Mset::from_elements(const std::vector<Element>& items) {
    Entries e;
    for (const auto& x : items)
        e[x] += 1.0;
    return Mset(std::move(e));
}

Mset Mset::from_pairs(std::initializer_list<std::pair<Element, double>> pairs) {
    Entries e;
    for (const auto& [x, m] : pairs)
        e[x] += m;
    return Mset(std::move(e));
}

double Mset::multiplicity(const Element& x) const {
    auto it = entries_.find(x);
    return it == entries_.end() ? 0.0 : it->second;
}

std::set<Element> Mset::support(SupportMode mode) const {
    std::set<Element> s;
    for (const auto& [x, m] : entries_) {
        if (mode == SupportMode::Positive ? m > 0.0 : m != 0.0)
            s.insert(x);
    }
    return s;
}

double Mset::cardinality(CardinalityMode mode) const {
    double total = 0.0;
    for (const auto& [x, m] : entries_)
        total += mode == CardinalityMode::Signed ? m : std::abs(m);
    return total;
}

bool is_subset(const Mset& a, const Mset& b) {
    for (const auto& [x, m] : a.entries())
        if (m > b.multiplicity(x))
            return false;
    for (const auto& [x, m] : b.entries())
        if (a.multiplicity(x) > m)
            return false;
    return true;
}

namespace {

double apply_op(MsetOp op, double ma, double mb) {
    switch (op) {
    case MsetOp::Union: return std::max(ma, mb);
    case MsetOp::Intersection: return std::min(ma, mb);
    case MsetOp::Sum: return ma + mb;
    case MsetOp::DiffSigned: return ma - mb;
    case MsetOp::DiffTruncated: return std::max(ma - mb, 0.0);
    case MsetOp::Product: return ma * mb;
    }
    throw std::logic_error("unknown mset op");
}

} // namespace

Mset combine(MsetOp op, const Mset& a, const Mset& b) {
    Mset::Entries out;
    for (const auto& [x, ma] : a.entries()) {
        double v = apply_op(op, ma, b.multiplicity(x));
        if (v != 0.0)
            out.emplace(x, v);
    }
    for (const auto& [x, mb] : b.entries()) {
        if (a.entries().contains(x))
            continue;
        double v = apply_op(op, 0.0, mb);
        if (v != 0.0)
            out.emplace(x, v);
    }
    return Mset(std::move(out));
}

Mset quotient(const Mset& a, const Mset& b) {
    Mset::Entries out;
    for (const auto& [x, mb] : b.entries()) {
        double v = a.multiplicity(x) / mb;
        if (v != 0.0)
            out.emplace(x, v);
    }
    return Mset(std::move(out));
}

Mset complement(const Mset& a) {
    Mset::Entries out;
    for (const auto& [x, m] : a.entries())
        out.emplace(x, -m);
    return Mset(std::move(out));
}

Mset scale(const Mset& a, double c) {
    Mset::Entries out;
    for (const auto& [x, m] : a.entries()) {
        double v = m * c;
        if (v != 0.0)
            out.emplace(x, v);
    }
    return Mset(std::move(out));
}

bool approx_equal(const Mset& a, const Mset& b, double tol) {
    for (const auto& [x, m] : a.entries())
        if (std::abs(m - b.multiplicity(x)) > tol)
            return false;
    for (const auto& [x, m] : b.entries())
        if (std::abs(m - a.multiplicity(x)) > tol)
            return false;
    return true;
}

} // namespace multikit
