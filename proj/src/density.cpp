#include "multikit/density.hpp"

#include "multikit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace multikit {

double default_bandwidth(const LabeledPoints& points) {
    if (points.empty())
        throw std::invalid_argument("empty point set");
    std::vector<double> pooled;
    pooled.reserve(points.size() * 2);
    for (const auto& p : points) {
        pooled.push_back(p.x);
        pooled.push_back(p.y);
    }
    double mean = 0.0;
    for (double v : pooled)
        mean += v;
    mean /= static_cast<double>(pooled.size());
    double var = 0.0;
    for (double v : pooled)
        var += (v - mean) * (v - mean);
    var /= static_cast<double>(pooled.size());
    double n = static_cast<double>(points.size());
    return std::pow(n, -1.0 / 6.0) * std::sqrt(var);
}

Grid2D default_grid(const LabeledPoints& points, double max_bandwidth, std::size_t cells) {
    if (points.empty())
        throw std::invalid_argument("empty point set");
    double xmin = points.front().x, xmax = xmin;
    double ymin = points.front().y, ymax = ymin;
    for (const auto& p : points) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    double margin = 4.0 * max_bandwidth;
    Grid2D grid;
    grid.x0 = xmin - margin;
    grid.y0 = ymin - margin;
    grid.nx = grid.ny = cells;
    grid.dx = (xmax + margin - grid.x0) / static_cast<double>(cells);
    grid.dy = (ymax + margin - grid.y0) / static_cast<double>(cells);
    return grid;
}

KdeField kde2d(const LabeledPoints& points, const Grid2D& grid, double bandwidth) {
    if (!(bandwidth > 0.0))
        throw std::invalid_argument("bandwidth must be positive");
    if (points.empty())
        throw std::invalid_argument("empty point set");

    double xmax_grid = grid.x0 + grid.dx * static_cast<double>(grid.nx);
    double ymax_grid = grid.y0 + grid.dy * static_cast<double>(grid.ny);
    for (const auto& p : points) {
        if (p.x - 3.0 * bandwidth < grid.x0 || p.x + 3.0 * bandwidth > xmax_grid ||
            p.y - 3.0 * bandwidth < grid.y0 || p.y + 3.0 * bandwidth > ymax_grid) {
            std::cerr << "warning: point (" << p.x << ", " << p.y
                      << ") within 3 bandwidths of the grid edge; mass may be clipped\n";
            break;
        }
    }

    Field2D field = Field2D::constant(0.0, grid);
    const double inv = 1.0 / (2.0 * bandwidth * bandwidth);
    for (const auto& p : points) {
        for (std::size_t j = 0; j < grid.ny; ++j) {
            double dy = grid.y(j) - p.y;
            for (std::size_t i = 0; i < grid.nx; ++i) {
                double dxv = grid.x(i) - p.x;
                field.at(i, j) += std::exp(-(dxv * dxv + dy * dy) * inv);
            }
        }
    }
    double mass = integral(field);
    if (mass <= 0.0)
        throw std::invalid_argument("grid does not cover the point set");
    Field2D normalized = field;
    for (std::size_t j = 0; j < grid.ny; ++j)
        for (std::size_t i = 0; i < grid.nx; ++i)
            normalized.at(i, j) = field.at(i, j) / mass;

    KdeField out;
    out.field = std::move(normalized);
    out.label = points.front().label;
    out.bandwidth = bandwidth;
    return out;
}

namespace {

void require_same_grid(const std::vector<KdeField>& fields) {
    for (const auto& f : fields)
        if (!(f.field.grid() == fields.front().field.grid()))
            throw AlignmentError("field grid mismatch");
}

} // namespace

std::vector<std::vector<double>> cluster_jaccard_matrix(const std::vector<KdeField>& fields) {
    require_same_grid(fields);
    const std::size_t k = fields.size();
    std::vector<std::vector<double>> m(k, std::vector<double>(k, 1.0));
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            const auto& fa = fields[a].field.samples();
            const auto& fb = fields[b].field.samples();
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < fa.size(); ++i) {
                num += std::min(fa[i], fb[i]);
                den += std::max(fa[i], fb[i]);
            }
            m[a][b] = m[b][a] = den > 0.0 ? num / den : 1.0;
        }
    }
    return m;
}

double cluster_jaccard_multi(const std::vector<KdeField>& fields) {
    if (fields.size() < 3)
        throw std::invalid_argument("multiway Jaccard needs at least three fields");
    require_same_grid(fields);
    const std::size_t count = fields.front().field.samples().size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        double lo = fields.front().field.samples()[i], hi = lo;
        for (std::size_t f = 1; f < fields.size(); ++f) {
            double v = fields[f].field.samples()[i];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        num += lo;
        den += hi;
    }
    return den > 0.0 ? num / den : 1.0;
}

} // namespace multikit
