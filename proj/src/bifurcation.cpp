#include "pbif/bifurcation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "pbif/consistency.hpp"
#include "pbif/cubical.hpp"
#include "pbif/kde.hpp"

namespace pbif {

const std::vector<std::vector<int>>& BifurcationPlot::matrix(int dim) const {
    for (std::size_t d = 0; d < dims.size(); ++d)
        if (dims[d] == dim) return beta[d];
    throw std::invalid_argument("bifurcation plot: dimension " + std::to_string(dim) +
                                " not present");
}

BifurcationPlot analytical_plot(const DensityModel& base, std::span<const double> parameters,
                                std::span<const double> levels, std::span<const int> dims,
                                const GridSpec& grid) {
    BifurcationPlot plot;
    plot.provenance = "analytical";
    plot.parameters.assign(parameters.begin(), parameters.end());
    plot.levels.assign(levels.begin(), levels.end());
    plot.dims.assign(dims.begin(), dims.end());
    plot.beta.assign(dims.size(), {});

    DensityModel model = base;
    for (double p : parameters) {
        model.params[model.sweep_param] = p;
        try {
            const auto field =
                normalize_max(evaluate_on_grid(model, grid.window, grid.nx, grid.ny));
            const auto diagram = persistence(build_filtration(field, Direction::superlevel));
            for (std::size_t d = 0; d < dims.size(); ++d)
                plot.beta[d].push_back(betti_vector(diagram, levels, dims[d]).counts);
        } catch (const std::exception& e) {
            throw std::runtime_error("analytical_plot at " + model.sweep_param + "=" +
                                     std::to_string(p) + ": " + e.what());
        }
    }
    return plot;
}

BifurcationPlot estimated_plot(const std::string& family, const ParamMap& base_params,
                               std::span<const double> parameters, std::span<const double> levels,
                               std::span<const int> dims, const PipelineConfig& cfg,
                               std::uint64_t master_seed) {
    const DensityModel base = make_density(family);  // validates the family and sweep key

    BifurcationPlot plot;
    plot.provenance = "estimated";
    plot.parameters.assign(parameters.begin(), parameters.end());
    plot.levels.assign(levels.begin(), levels.end());
    plot.dims.assign(dims.begin(), dims.end());
    plot.beta.assign(dims.size(), {});

    for (std::size_t j = 0; j < parameters.size(); ++j) {
        ParamMap params = base.params;
        for (const auto& [k, v] : base_params) params[k] = v;
        params[base.sweep_param] = parameters[j];
        try {
            const auto sys = make_system(family, params);
            // Trajectory long enough for `samples` post-burn-in states at the
            // given stride.
            const std::size_t steps = cfg.burn_in + cfg.stride * (cfg.samples - 1) + 1;
            const auto traj =
                euler_maruyama(sys, cfg.x0, cfg.dt, steps, derive_seed(master_seed, j));
            auto sample = stationary_sample(traj, cfg.burn_in, cfg.stride);
            if (sample.size() > cfg.samples) sample.coords.resize(cfg.samples * sample.dim);

            // KDE on the full stationary sample; the estimator's ball centers
            // are the greedy-permuted subsample.
            const auto kde = make_kde(sample);
            const auto points = greedy_permutation(kde.samples, cfg.subsample);
            const double r = cfg.r > 0 ? cfg.r : clamp_radius(scalar_bandwidth(kde));
            for (std::size_t d = 0; d < dims.size(); ++d)
                plot.beta[d].push_back(
                    estimated_betti_vector(points, kde, levels, r, cfg.epsilon, dims[d]).counts);
        } catch (const std::exception& e) {
            throw std::runtime_error("estimated_plot at " + base.sweep_param + "=" +
                                     std::to_string(parameters[j]) + ": " + e.what());
        }
    }
    return plot;
}

BifurcationPlot error_plot(const BifurcationPlot& truth, const BifurcationPlot& estimate) {
    if (truth.parameters != estimate.parameters || truth.levels != estimate.levels ||
        truth.dims != estimate.dims)
        throw std::invalid_argument("error_plot: parameter/level/dimension grids do not match");

    BifurcationPlot err = truth;
    err.provenance = "error";
    for (std::size_t d = 0; d < truth.dims.size(); ++d)
        for (std::size_t j = 0; j < truth.parameters.size(); ++j)
            for (std::size_t k = 0; k < truth.levels.size(); ++k)
                err.beta[d][j][k] = truth.beta[d][j][k] - estimate.beta[d][j][k];
    return err;
}

std::vector<double> detect_transitions(const BifurcationPlot& plot, int dim, int min_support) {
    const auto& m = plot.matrix(dim);
    std::vector<double> out;
    if (m.size() < 2) return out;

    auto attained = [min_support](const std::vector<int>& col) {
        std::map<int, int> support;
        for (int v : col) ++support[v];
        std::set<int> values;
        for (auto [v, count] : support)
            if (count >= min_support) values.insert(v);
        return values;
    };
    auto prev = attained(m[0]);
    for (std::size_t j = 1; j < m.size(); ++j) {
        auto cur = attained(m[j]);
        if (cur != prev) out.push_back(plot.parameters[j]);
        prev = std::move(cur);
    }
    return out;
}

}  // namespace pbif
