#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pbif/diagram.hpp"
#include "pbif/kde.hpp"
#include "pbif/simplicial.hpp"

namespace pbif {

/// Parameters of the topologically consistent Betti estimator.
///
/// The estimate at level L is the rank of the map on homology induced by
/// including the union of r-balls over points with density >= L + epsilon
/// into the union over points with density >= L - epsilon; ball unions are
/// realized as Rips complexes at edge threshold 2r.
struct EstimatorConfig {
    double epsilon = 1e-5;
    double r = 0.0;      // ball radius in state-space units
    double level = 0.0;  // threshold on the raw density scale
    int dim = 0;

    static constexpr double r_lo = 0.1;  // useful radius range for 2D state spaces
    static constexpr double r_hi = 0.8;
};

/// Clamp a bandwidth-derived radius into [r_lo, r_hi].
double clamp_radius(double bandwidth);

/// Indices with density >= level (inclusive).
std::vector<std::uint32_t> superlevel_points(std::span<const double> densities, double level);

/// Betti estimate from points with precomputed density values. Returns 0
/// when the upper superlevel set is empty; dims other than 0 and 1 are
/// rejected.
int estimate_betti(const PointCloud& points, std::span<const double> densities,
                   const EstimatorConfig& cfg);

/// Same, evaluating the KDE at the points first.
int estimate_betti(const PointCloud& points, const KdeModel& kde, const EstimatorConfig& cfg);

/// Fast path and oracle for dim 0: the image rank equals the number of
/// connected components of b containing at least one vertex of a_vertices.
int h0_image_rank_unionfind(std::span<const std::uint32_t> a_vertices, const SimplicialComplex& b);

/// Elementwise estimate over a level grid. Levels are fractions of the peak
/// estimated density over the thresholded points themselves.
BettiVector estimated_betti_vector(const PointCloud& points, const KdeModel& kde,
                                   std::span<const double> levels, double r, double epsilon,
                                   int dim);

}  // namespace pbif
