#include "pbif/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pbif {

double ScalarField2D::max_value() const {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : values) m = std::max(m, v);
    return m;
}

bool ScalarField2D::all_finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

std::vector<double> grid_centers(double lo, double hi, int n) {
    if (!(hi > lo) || n < 1) throw std::invalid_argument("grid_centers: empty window");
    const double mid = 0.5 * (lo + hi);
    const double half_step = 0.5 * (hi - lo) / n;
    std::vector<double> out(n);
    // 2i+1-n is an exact integer offset, so mirrored cells of a symmetric
    // window get exactly negated coordinates.
    for (int i = 0; i < n; ++i) out[i] = mid + static_cast<double>(2 * i + 1 - n) * half_step;
    return out;
}

std::vector<double> uniform_levels(int count) {
    if (count < 0) throw std::invalid_argument("uniform_levels: negative count");
    std::vector<double> out(count);
    for (int k = 0; k < count; ++k) out[k] = static_cast<double>(k + 1) / count;
    return out;
}

}  // namespace pbif
