#pragma once

#include <string>
#include <vector>

#include "multikit/mfunction.hpp"

namespace multikit {

struct Basis {
    std::vector<MFunction> functions; // all on one grid, none identically zero
    std::vector<std::string> labels;

    std::size_t size() const { return functions.size(); }
};

struct TransformResult {
    std::vector<double> coefficients;          // one per basis function, in order
    MFunction residual;
    std::vector<double> residual_norm_history; // integral of |residual| after each step
};

// Sequency-ordered Walsh system on a dyadic grid: 2^k functions with values
// in {-1, +1}, sign-change count increasing 0, 1, ..., 2^k - 1.
Basis walsh_basis(unsigned k, const Grid1D& grid);

enum class ResidualUpdate {
    CoefficientScaled, // residual -= c_i * g_i (default; makes round trips exact)
    Literal,           // residual -= g_i
};

// Sequential projection onto the basis under the common product:
// c_i = <<residual, g_i>> / <<g_i, g_i>>, then the residual update.
TransformResult greedy_decompose(const MFunction& f, const Basis& basis,
                                 ResidualUpdate update = ResidualUpdate::CoefficientScaled);

// Plain weighted sum of the basis functions.
MFunction reconstruct(const TransformResult& result, const Basis& basis);

enum class GramProduct { Common, Classical };

// G[i][j] = product of members i and j, normalized by the domain length.
std::vector<std::vector<double>> gram_matrix(const Basis& basis, GramProduct product);

} // namespace multikit
