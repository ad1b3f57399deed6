#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pbif/field.hpp"

namespace pbif {

using ParamMap = std::map<std::string, double>;

/// A stationary density family: an unnormalized evaluator plus the parameter
/// the bifurcation sweep varies.
struct DensityModel {
    std::string family;
    ParamMap params;
    std::string sweep_param;
    std::function<double(double, double, const ParamMap&)> evaluate;
};

/// Stationary density of the noisy Duffing oscillator, up to normalization:
/// exp[-(x2^2 + h*x1^2 + x1^4/2) / (2 q1^2 D11)].
double duffing_pdf(double x1, double x2, double h, double q1, double d11);

/// Rotationally symmetric crater surrogate for limit-cycle densities:
/// exp[-kappa ((x1^2 + x2^2) - a)^2]; the rim at radius sqrt(a) has value 1.
double crater_pdf(double x1, double x2, double kappa, double a);

/// Registry of density families ("duffing", "crater", plus plugins).
DensityModel make_density(const std::string& family, const ParamMap& overrides = {});
void register_density(const DensityModel& prototype);
std::vector<std::string> density_families();

/// Cell-center sampling of the evaluator on an nx x ny grid.
/// Throws on a non-finite evaluation.
ScalarField2D evaluate_on_grid(const DensityModel& model, const Window& window, int nx, int ny);

/// Divide by the grid maximum. Throws if the maximum is not positive.
ScalarField2D normalize_max(ScalarField2D field);

/// Critical levels of the max-normalized Duffing density. For h < 0 the two
/// peaks sit at level 1 and the saddle at exp(-h^2 / (4 q1^2 D11)); for
/// h >= 0 there is a single peak and no saddle.
struct CriticalLevels {
    double peak = 1.0;
    std::optional<double> saddle;
};
CriticalLevels duffing_critical_levels(double h, double q1, double d11);

}  // namespace pbif
