#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace multikit {

// Opaque mset element. Ordering and equality go through the canonical text
// form, so Element("2") and Element(2) are the same element.
class Element {
public:
    Element() = default;
    explicit Element(std::string label) : label_(std::move(label)) {}
    explicit Element(std::int64_t n) : label_(std::to_string(n)) {}

    const std::string& label() const { return label_; }

    friend bool operator==(const Element& a, const Element& b) { return a.label_ == b.label_; }
    friend auto operator<=>(const Element& a, const Element& b) { return a.label_ <=> b.label_; }

private:
    std::string label_;
};

enum class MsetOp {
    Union,         // elementwise max
    Intersection,  // elementwise min
    Sum,
    DiffSigned,
    DiffTruncated, // max(a - b, 0)
    Product,
};

enum class SupportMode {
    Positive, // m(x) > 0
    Nonzero,  // m(x) != 0, for signed msets
};

enum class CardinalityMode {
    Signed,   // sum of multiplicities
    Absolute, // sum of |multiplicities|
};

// Finite association Element -> real multiplicity. Canonical form never
// stores a zero entry; equality is equality of canonical forms. Multiplicities
// may be negative. Immutable value type; every operation returns a new mset.
class Mset {
public:
    using Entries = std::map<Element, double>;

    Mset() = default;
    explicit Mset(Entries entries);

    static Mset from_elements(const std::vector<Element>& items);
    static Mset from_pairs(std::initializer_list<std::pair<Element, double>> pairs);

    const Entries& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    double multiplicity(const Element& x) const;
    std::set<Element> support(SupportMode mode = SupportMode::Positive) const;
    double cardinality(CardinalityMode mode = CardinalityMode::Signed) const;

    friend bool operator==(const Mset&, const Mset&) = default;

private:
    Entries entries_; // invariant: no value is exactly 0
};

bool is_subset(const Mset& a, const Mset& b);

Mset combine(MsetOp op, const Mset& a, const Mset& b);

// Elementwise a/b over elements where b is nonzero; zero-denominator
// elements are excluded from the result rather than raising.
Mset quotient(const Mset& a, const Mset& b);

Mset complement(const Mset& a); // negate every multiplicity
Mset scale(const Mset& a, double c);

// Equality up to an absolute per-element tolerance, for float-heavy tests.
bool approx_equal(const Mset& a, const Mset& b, double tol = 1e-12);

} // namespace multikit
