#pragma once

#include <span>
#include <vector>

#include "pbif/field.hpp"
#include "pbif/simplicial.hpp"

namespace pbif {

/// Product-Gaussian kernel density estimate with a diagonal bandwidth matrix.
struct KdeModel {
    PointCloud samples;
    std::vector<double> bandwidths;  // one per dimension, > 0
};

/// Scott's rule: h_i = n^(-1/(d+4)) * s_i with s_i the per-dimension sample
/// standard deviation. Throws on fewer than 2 samples or zero variance.
std::vector<double> scott_bandwidth(const PointCloud& cloud);

/// KdeModel with Scott bandwidths.
KdeModel make_kde(PointCloud samples);

double kde_evaluate(const KdeModel& model, std::span<const double> x);
std::vector<double> kde_evaluate_all(const KdeModel& model, const PointCloud& queries);

/// Scalar reduction of the bandwidth vector: geometric mean.
double scalar_bandwidth(const KdeModel& model);

/// Grid sampling of the estimate (same cell-center convention as
/// evaluate_on_grid).
ScalarField2D kde_on_grid(const KdeModel& model, const Window& window, int nx, int ny);

}  // namespace pbif
