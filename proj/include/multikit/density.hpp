#pragma once

#include <string>
#include <vector>

#include "multikit/mfunction.hpp"

namespace multikit {

struct LabeledPoint {
    double x = 0.0;
    double y = 0.0;
    std::string label;
};

using LabeledPoints = std::vector<LabeledPoint>;

struct KdeField {
    Field2D field; // nonnegative, unit mass on the grid
    std::string label;
    double bandwidth = 0.0;
};

// Scott-style default: sigma = n^(-1/6) * std of the pooled x and y
// coordinates of one category.
double default_bandwidth(const LabeledPoints& points);

// Default comparison grid: bounding box of all points expanded by
// 4 * max bandwidth, 256 x 256 cells.
Grid2D default_grid(const LabeledPoints& points, double max_bandwidth,
                    std::size_t cells = 256);

// Sum of isotropic Gaussian kernels at the given points, renormalized to
// unit mass on the grid. All points are expected to share one label.
KdeField kde2d(const LabeledPoints& points, const Grid2D& grid, double bandwidth);

// Symmetric pairwise Jaccard matrix (min-integral over max-integral) with
// unit diagonal.
std::vector<std::vector<double>> cluster_jaccard_matrix(const std::vector<KdeField>& fields);

// Multiway Jaccard over three or more fields.
double cluster_jaccard_multi(const std::vector<KdeField>& fields);

} // namespace multikit
