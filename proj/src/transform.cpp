#include "multikit/transform.hpp"

#include "multikit/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "multikit/similarity.hpp"

namespace multikit {

Basis walsh_basis(unsigned k, const Grid1D& grid) {
    const std::size_t n = std::size_t{1} << k;
    if (grid.n != n)
        throw std::invalid_argument("grid size must be 2^k");

    // Hadamard row r, sample j: (-1)^popcount(r & j). Sequency order is
    // obtained by sorting rows on their sign-change count, which runs
    // 0..n-1 exactly once across the system.
    std::vector<std::pair<unsigned, std::size_t>> order(n); // (sequency, row)
    for (std::size_t r = 0; r < n; ++r) {
        unsigned changes = 0;
        int prev = std::popcount(r & std::size_t{0}) % 2;
        for (std::size_t j = 1; j < n; ++j) {
            int cur = std::popcount(r & j) % 2;
            changes += cur != prev;
            prev = cur;
        }
        order[r] = {changes, r};
    }
    std::sort(order.begin(), order.end());

    Basis basis;
    basis.functions.reserve(n);
    basis.labels.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::size_t r = order[s].second;
        std::vector<double> samples(n);
        for (std::size_t j = 0; j < n; ++j)
            samples[j] = std::popcount(r & j) % 2 == 0 ? 1.0 : -1.0;
        basis.functions.emplace_back(grid, std::move(samples));
        basis.labels.push_back("walsh_" + std::to_string(s));
    }
    return basis;
}

TransformResult greedy_decompose(const MFunction& f, const Basis& basis,
                                 ResidualUpdate update) {
    if (basis.size() == 0)
        throw std::invalid_argument("empty basis");
    for (const auto& g : basis.functions) {
        if (!(g.grid() == f.grid()))
            throw AlignmentError("grid mismatch");
        if (integral_abs(g) == 0.0)
            throw std::invalid_argument("basis contains a zero function");
    }

    TransformResult result;
    result.coefficients.reserve(basis.size());
    result.residual = f;
    for (const auto& g : basis.functions) {
        double c = common_product(result.residual, g) / common_product(g, g);
        result.coefficients.push_back(c);
        const MFunction& step = update == ResidualUpdate::CoefficientScaled
                                    ? scale(g, c)
                                    : g;
        result.residual = pointwise(MsetOp::DiffSigned, result.residual, step);
        result.residual_norm_history.push_back(integral_abs(result.residual));
    }
    return result;
}

MFunction reconstruct(const TransformResult& result, const Basis& basis) {
    if (result.coefficients.size() != basis.size())
        throw std::invalid_argument("coefficient count does not match basis");
    if (basis.size() == 0)
        throw std::invalid_argument("empty basis");
    MFunction acc = MFunction::constant(0.0, basis.functions.front().grid());
    for (std::size_t i = 0; i < basis.size(); ++i)
        acc = pointwise(MsetOp::Sum, acc, scale(basis.functions[i], result.coefficients[i]));
    return acc;
}

std::vector<std::vector<double>> gram_matrix(const Basis& basis, GramProduct product) {
    if (basis.size() == 0)
        throw std::invalid_argument("empty basis");
    const double length = basis.functions.front().grid().length();
    std::vector<std::vector<double>> g(basis.size(), std::vector<double>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i; j < basis.size(); ++j) {
            double v;
            if (product == GramProduct::Common) {
                v = common_product(basis.functions[i], basis.functions[j]);
            } else {
                v = integral(pointwise(MsetOp::Product, basis.functions[i], basis.functions[j]));
            }
            g[i][j] = g[j][i] = v / length;
        }
    }
    return g;
}

} // namespace multikit
