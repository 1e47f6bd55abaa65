#pragma once

#include <string>
#include <vector>

#include "multikit/mset.hpp"

namespace multikit {

// Uniform 1-D sample grid. Abscissa of index i is x0 + i*dx.
struct Grid1D {
    double x0 = 0.0;
    double dx = 1.0;
    std::size_t n = 1;

    double x(std::size_t i) const { return x0 + static_cast<double>(i) * dx; }
    double length() const { return static_cast<double>(n) * dx; }

    friend bool operator==(const Grid1D&, const Grid1D&) = default;
};

Grid1D make_grid(double x0, double dx, std::size_t n); // validates dx > 0, n >= 1

// Column-major flattening of 1-based (i, j) matrix indices onto 0-based
// linear indices: k = ni*(j-1) + i - 1.
struct IndexMap {
    std::size_t ni = 1;
    std::size_t nj = 1;
};

std::size_t flatten(std::size_t i, std::size_t j, const IndexMap& map);
std::pair<std::size_t, std::size_t> unflatten(std::size_t k, const IndexMap& map);

// A uniformly sampled function viewed as a dense mset over grid indices.
// Samples are stored densely: a zero sample is a meaningful grid point,
// it only disappears in the (sparse) mset view.
class MFunction {
public:
    MFunction() = default;
    MFunction(Grid1D grid, std::vector<double> samples);

    static MFunction from_vector(const std::vector<double>& values, const Grid1D& grid);
    static MFunction constant(double value, const Grid1D& grid);

    const Grid1D& grid() const { return grid_; }
    const std::vector<double>& samples() const { return samples_; }
    double operator[](std::size_t i) const { return samples_[i]; }
    std::size_t size() const { return samples_.size(); }

    // Sparse mset view keyed by 1-based indices; zero samples canonicalize away.
    Mset mset_view() const;

    friend bool operator==(const MFunction&, const MFunction&) = default;

private:
    Grid1D grid_;
    std::vector<double> samples_;
};

// Analytic sample generators. gauss_g and laplace_h are the worked example
// pair g(x) = e^{-10 x^2}, h(x) = 2 e^{-10 |x - 0.1|}; sin/cos take
// params = {frequency, phase}; const takes params = {value}.
MFunction sample_builtin(const std::string& name, const std::vector<double>& params,
                         const Grid1D& grid);

// Samplewise mset semantics; both operands must share the grid exactly.
MFunction pointwise(MsetOp op, const MFunction& f, const MFunction& g);
// Samplewise quotient; emits 0 where the denominator sample is 0 (the dense
// analogue of the mset exclusion policy).
MFunction pointwise_quotient(const MFunction& f, const MFunction& g);
MFunction complement(const MFunction& f);
MFunction scale(const MFunction& f, double c);

// Left-point rectangle quadrature: dx * sum of samples.
double integral(const MFunction& f);
double integral_abs(const MFunction& f);

// Scale so that the integral of |f| is 1. Throws on zero-area input.
MFunction normalize_area(const MFunction& f);

// Linear interpolation onto a new grid, clamped to 0 outside the source
// domain. Explicit utility only; binary operations never resample.
MFunction resample(const MFunction& f, const Grid1D& grid);

// ---- 2-D fields ----

struct Grid2D {
    double x0 = 0.0, y0 = 0.0;
    double dx = 1.0, dy = 1.0;
    std::size_t nx = 1, ny = 1;

    double x(std::size_t i) const { return x0 + static_cast<double>(i) * dx; }
    double y(std::size_t j) const { return y0 + static_cast<double>(j) * dy; }

    friend bool operator==(const Grid2D&, const Grid2D&) = default;
};

// Dense 2-D scalar field, row-major in y then x: sample (i, j) is at
// index j*nx + i.
class Field2D {
public:
    Field2D() = default;
    Field2D(Grid2D grid, std::vector<double> samples);

    static Field2D constant(double value, const Grid2D& grid);

    const Grid2D& grid() const { return grid_; }
    const std::vector<double>& samples() const { return samples_; }
    double at(std::size_t i, std::size_t j) const { return samples_[j * grid_.nx + i]; }
    double& at(std::size_t i, std::size_t j) { return samples_[j * grid_.nx + i]; }

private:
    Grid2D grid_;
    std::vector<double> samples_;
};

double integral(const Field2D& f); // dx*dy * sum

} // namespace multikit
