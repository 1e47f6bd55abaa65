#include "multikit/mfunction.hpp"

#include "multikit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace multikit {

Grid1D make_grid(double x0, double dx, std::size_t n) {
    if (!(dx > 0.0))
        throw std::invalid_argument("grid step must be positive");
    if (n < 1)
        throw std::invalid_argument("grid needs at least one sample");
    if (!std::isfinite(x0) || !std::isfinite(dx))
        throw std::invalid_argument("grid parameters must be finite");
    return Grid1D{x0, dx, n};
}

std::size_t flatten(std::size_t i, std::size_t j, const IndexMap& map) {
    if (i < 1 || i > map.ni || j < 1 || j > map.nj)
        throw std::out_of_range("matrix index out of range");
    return map.ni * (j - 1) + i - 1;
}

std::pair<std::size_t, std::size_t> unflatten(std::size_t k, const IndexMap& map) {
    if (k >= map.ni * map.nj)
        throw std::out_of_range("linear index out of range");
    return {k % map.ni + 1, k / map.ni + 1};
}

MFunction::MFunction(Grid1D grid, std::vector<double> samples)
    : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != grid_.n)
        throw std::invalid_argument("sample count does not match grid");
    for (double v : samples_)
        if (!std::isfinite(v))
            throw std::invalid_argument("samples must be finite");
}

MFunction MFunction::from_vector(const std::vector<double>& values, const Grid1D& grid) {
    if (values.size() != grid.n)
        throw std::invalid_argument("vector length does not match grid");
    return MFunction(grid, values);
}

MFunction MFunction::constant(double value, const Grid1D& grid) {
    return MFunction(grid, std::vector<double>(grid.n, value));
}

Mset MFunction::mset_view() const {
    Mset::Entries e;
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (samples_[i] != 0.0)
            e.emplace(Element(static_cast<std::int64_t>(i + 1)), samples_[i]);
    }
    return Mset(std::move(e));
}

MFunction sample_builtin(const std::string& name, const std::vector<double>& params,
                         const Grid1D& grid) {
    std::vector<double> s(grid.n);
    auto fill = [&](auto&& fn) {
        for (std::size_t i = 0; i < grid.n; ++i)
            s[i] = fn(grid.x(i));
    };
    if (name == "gauss_g") {
        fill([](double x) { return std::exp(-10.0 * x * x); });
    } else if (name == "laplace_h") {
        fill([](double x) { return 2.0 * std::exp(-10.0 * std::abs(x - 0.1)); });
    } else if (name == "sin" || name == "cos") {
        double freq = params.size() > 0 ? params[0] : 1.0;
        double phase = params.size() > 1 ? params[1] : 0.0;
        double w = 2.0 * M_PI * freq;
        if (name == "sin")
            fill([=](double x) { return std::sin(w * x + phase); });
        else
            fill([=](double x) { return std::cos(w * x + phase); });
    } else if (name == "const") {
        double v = params.size() > 0 ? params[0] : 0.0;
        fill([=](double) { return v; });
    } else {
        throw std::invalid_argument("unknown builtin function: " + name);
    }
    return MFunction(grid, std::move(s));
}

namespace {

void require_same_grid(const MFunction& f, const MFunction& g) {
    if (!(f.grid() == g.grid()))
        throw AlignmentError("grid mismatch");
}

double apply_op(MsetOp op, double a, double b) {
    switch (op) {
    case MsetOp::Union: return std::max(a, b);
    case MsetOp::Intersection: return std::min(a, b);
    case MsetOp::Sum: return a + b;
    case MsetOp::DiffSigned: return a - b;
    case MsetOp::DiffTruncated: return std::max(a - b, 0.0);
    case MsetOp::Product: return a * b;
    }
    throw std::logic_error("unknown mset op");
}

} // namespace

MFunction pointwise(MsetOp op, const MFunction& f, const MFunction& g) {
    require_same_grid(f, g);
    std::vector<double> s(f.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = apply_op(op, f[i], g[i]);
    return MFunction(f.grid(), std::move(s));
}

MFunction pointwise_quotient(const MFunction& f, const MFunction& g) {
    require_same_grid(f, g);
    std::vector<double> s(f.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = g[i] == 0.0 ? 0.0 : f[i] / g[i];
    return MFunction(f.grid(), std::move(s));
}

MFunction complement(const MFunction& f) {
    std::vector<double> s(f.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = -f[i];
    return MFunction(f.grid(), std::move(s));
}

MFunction scale(const MFunction& f, double c) {
    std::vector<double> s(f.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = f[i] * c;
    return MFunction(f.grid(), std::move(s));
}

double integral(const MFunction& f) {
    double acc = 0.0;
    for (double v : f.samples())
        acc += v;
    return acc * f.grid().dx;
}

double integral_abs(const MFunction& f) {
    double acc = 0.0;
    for (double v : f.samples())
        acc += std::abs(v);
    return acc * f.grid().dx;
}

MFunction normalize_area(const MFunction& f) {
    double area = integral_abs(f);
    if (area == 0.0)
        throw std::invalid_argument("cannot normalize a zero-area function");
    return scale(f, 1.0 / area);
}

MFunction resample(const MFunction& f, const Grid1D& grid) {
    const Grid1D& src = f.grid();
    std::vector<double> s(grid.n, 0.0);
    for (std::size_t i = 0; i < grid.n; ++i) {
        double t = (grid.x(i) - src.x0) / src.dx;
        if (t < 0.0 || t > static_cast<double>(src.n - 1))
            continue;
        auto lo = static_cast<std::size_t>(t);
        if (lo + 1 >= src.n) {
            s[i] = f[src.n - 1];
        } else {
            double frac = t - static_cast<double>(lo);
            s[i] = (1.0 - frac) * f[lo] + frac * f[lo + 1];
        }
    }
    return MFunction(grid, std::move(s));
}

Field2D::Field2D(Grid2D grid, std::vector<double> samples)
    : grid_(grid), samples_(std::move(samples)) {
    if (!(grid_.dx > 0.0) || !(grid_.dy > 0.0) || grid_.nx < 1 || grid_.ny < 1)
        throw std::invalid_argument("bad 2-D grid");
    if (samples_.size() != grid_.nx * grid_.ny)
        throw std::invalid_argument("sample count does not match 2-D grid");
    for (double v : samples_)
        if (!std::isfinite(v))
            throw std::invalid_argument("samples must be finite");
}

Field2D Field2D::constant(double value, const Grid2D& grid) {
    return Field2D(grid, std::vector<double>(grid.nx * grid.ny, value));
}

double integral(const Field2D& f) {
    double acc = 0.0;
    for (double v : f.samples())
        acc += v;
    return acc * f.grid().dx * f.grid().dy;
}

} // namespace multikit
