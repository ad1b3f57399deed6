#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pbif/densities.hpp"
#include "pbif/field.hpp"
#include "pbif/stochastic.hpp"

namespace pbif {

/// Homological bifurcation plot: Betti numbers indexed by bifurcation
/// parameter (columns) and level (rows within a column). Error plots reuse
/// the same shape with signed entries.
struct BifurcationPlot {
    std::string provenance;  // "analytical" | "estimated" | "error"
    std::vector<double> parameters;
    std::vector<double> levels;
    std::vector<int> dims;
    std::vector<std::vector<std::vector<int>>> beta;  // [dim index][param index][level index]

    const std::vector<std::vector<int>>& matrix(int dim) const;
};

struct GridSpec {
    Window window;
    int nx = 201;
    int ny = 201;
};

/// Analytical plot: per parameter value, evaluate the density on the grid,
/// max-normalize, run superlevel cubical persistence, and read Betti vectors.
BifurcationPlot analytical_plot(const DensityModel& base, std::span<const double> parameters,
                                std::span<const double> levels, std::span<const int> dims,
                                const GridSpec& grid = {});

/// Simulation / estimation settings for the estimated plot.
struct PipelineConfig {
    double dt = 0.01;
    std::size_t burn_in = 10000;
    std::size_t stride = 10;
    std::size_t samples = 5000;
    std::size_t subsample = 500;
    State x0{0.0, 0.0};
    double epsilon = 1e-5;
    double r = 0.0;  // <= 0: clamped KDE bandwidth (geometric mean)
};

/// Estimated plot: per parameter value, simulate the family's SDE, build a
/// KDE on the stationary sample, greedy-subsample the estimator points, and
/// run the consistency estimator over the level grid. Deterministic per
/// master seed (per-column seeds derived by index).
BifurcationPlot estimated_plot(const std::string& family, const ParamMap& base_params,
                               std::span<const double> parameters, std::span<const double> levels,
                               std::span<const int> dims, const PipelineConfig& cfg,
                               std::uint64_t master_seed);

/// Elementwise truth - estimate. Throws on mismatched grids.
BifurcationPlot error_plot(const BifurcationPlot& truth, const BifurcationPlot& estimate);

/// Parameter values where the Betti column changes qualitatively: the set of
/// Betti values attained over the column differs from the previous column.
/// Counting cells that merely flip between already-attained values would
/// flag every movement of a topological boundary across the level grid, so
/// only the value set matters. min_support > 1 drops values attained in
/// fewer level cells before comparing, a denoising knob for estimated plots
/// (off by default: thin bands near a bifurcation are genuine signal).
std::vector<double> detect_transitions(const BifurcationPlot& plot, int dim, int min_support = 1);

}  // namespace pbif
