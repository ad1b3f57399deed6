#pragma once

#include <vector>

namespace pbif {

/// Rectangular evaluation window in state space.
struct Window {
    double x_min = -3.0;
    double x_max = 3.0;
    double y_min = -3.0;
    double y_max = 3.0;
};

/// Gridded scalar values over a rectangular state-space window. values[j*nx+i]
/// is the sample for the cell with x index i and y index j (row-major by y).
struct ScalarField2D {
    double x_min = 0.0;
    double y_min = 0.0;
    double dx = 1.0;
    double dy = 1.0;
    int nx = 0;
    int ny = 0;
    std::vector<double> values;

    double at(int i, int j) const { return values[static_cast<std::size_t>(j) * nx + i]; }
    double& at(int i, int j) { return values[static_cast<std::size_t>(j) * nx + i]; }

    double max_value() const;
    bool all_finite() const;
};

/// Cell-center coordinates of a 1D grid of n cells over [lo, hi]. Centers are
/// computed symmetrically about the window midpoint so that mirrored cells of
/// a symmetric window get exactly negated coordinates.
std::vector<double> grid_centers(double lo, double hi, int n);

/// Uniform level grid: count levels in (0, 1], i.e. (k+1)/count.
std::vector<double> uniform_levels(int count);

}  // namespace pbif
