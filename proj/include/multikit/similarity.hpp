#pragma once

#include <string>
#include <vector>

#include "multikit/mfunction.hpp"
#include "multikit/mset.hpp"

namespace multikit {

enum class SimilarityKind {
    Jaccard,
    CosineL2,
    CosineSum,
    CosineIntersection,
    CommonProduct,
    SupProduct,
};

std::string to_string(SimilarityKind kind);

struct SimilarityReport {
    SimilarityKind kind = SimilarityKind::Jaccard;
    double value = 0.0;
    double numerator = 0.0;
    double denominator = 0.0;
    std::vector<std::string> flags; // e.g. "indeterminate" for jaccard(0, 0)
};

// Pointwise sign-adjusted minimum: s_f s_g min(|f|, |g|) where the signs
// agree, -min(|f|, |g|) where they differ, 0 where either operand is 0.
double mproduct_value(double a, double b);

MFunction mproduct(const MFunction& f, const MFunction& g);
Mset mproduct(const Mset& a, const Mset& b);

// Integral (resp. sum) of the mproduct: the set analogue of the inner
// product, measuring signed shared area.
double common_product(const MFunction& f, const MFunction& g);
double common_product(const Mset& a, const Mset& b);

// Integral (resp. sum) of max(|f|, |g|): the union-area normalizer.
double sup_product(const MFunction& f, const MFunction& g);
double sup_product(const Mset& a, const Mset& b);

// common_product / sup_product. Equals sum-min over sum-max for nonnegative
// inputs. Both inputs identically zero scores 1 with an "indeterminate" flag.
SimilarityReport jaccard(const MFunction& f, const MFunction& g);
SimilarityReport jaccard(const Mset& a, const Mset& b);

// Multiway Jaccard: min over all inputs / max over all inputs. Nonnegative
// inputs only; needs at least two operands.
SimilarityReport jaccard_multi(const std::vector<MFunction>& inputs);
SimilarityReport jaccard_multi(const std::vector<Mset>& inputs);

enum class CosineVariant {
    L2,            // sum fg / (||f||_2 ||g||_2)
    SumNormalized, // sum fg / (sum|f| * sum|g|)
    Intersection,  // sum mproduct(f,g) / (sum|f| * sum|g|)
};

SimilarityReport cosine(const MFunction& f, const MFunction& g, CosineVariant variant);
SimilarityReport cosine(const Mset& a, const Mset& b, CosineVariant variant);

} // namespace multikit
