#include "pbif/densities.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace pbif {

namespace {

double param(const ParamMap& p, const std::string& name) {
    auto it = p.find(name);
    if (it == p.end()) throw std::invalid_argument("density: missing parameter " + name);
    return it->second;
}

std::unordered_map<std::string, DensityModel>& registry() {
    static std::unordered_map<std::string, DensityModel> families = [] {
        std::unordered_map<std::string, DensityModel> r;
        DensityModel duffing;
        duffing.family = "duffing";
        duffing.params = {{"h", 0.0}, {"q1", 1.0}, {"D11", 1.0}};
        duffing.sweep_param = "h";
        duffing.evaluate = [](double x1, double x2, const ParamMap& p) {
            return duffing_pdf(x1, x2, param(p, "h"), param(p, "q1"), param(p, "D11"));
        };
        r[duffing.family] = duffing;

        DensityModel crater;
        crater.family = "crater";
        crater.params = {{"kappa", 1.0}, {"a", 1.0}};
        crater.sweep_param = "a";
        crater.evaluate = [](double x1, double x2, const ParamMap& p) {
            return crater_pdf(x1, x2, param(p, "kappa"), param(p, "a"));
        };
        r[crater.family] = crater;
        return r;
    }();
    return families;
}

}  // namespace

double duffing_pdf(double x1, double x2, double h, double q1, double d11) {
    if (!(q1 > 0) || !(d11 > 0))
        throw std::invalid_argument("duffing_pdf: q1 and D11 must be positive");
    const double u = x2 * x2 + h * x1 * x1 + 0.5 * x1 * x1 * x1 * x1;
    return std::exp(-u / (2.0 * q1 * q1 * d11));
}

double crater_pdf(double x1, double x2, double kappa, double a) {
    if (!(kappa > 0)) throw std::invalid_argument("crater_pdf: kappa must be positive");
    const double s = x1 * x1 + x2 * x2 - a;
    return std::exp(-kappa * s * s);
}

DensityModel make_density(const std::string& family, const ParamMap& overrides) {
    auto it = registry().find(family);
    if (it == registry().end()) throw std::invalid_argument("unknown density family: " + family);
    DensityModel model = it->second;
    for (const auto& [name, value] : overrides) model.params[name] = value;
    return model;
}

void register_density(const DensityModel& prototype) {
    if (prototype.family.empty() || !prototype.evaluate)
        throw std::invalid_argument("register_density: family id and evaluator required");
    registry()[prototype.family] = prototype;
}

std::vector<std::string> density_families() {
    std::vector<std::string> names;
    for (const auto& [name, model] : registry()) names.push_back(name);
    std::sort(names.begin(), names.end());
    return names;
}

ScalarField2D evaluate_on_grid(const DensityModel& model, const Window& window, int nx, int ny) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("evaluate_on_grid: nx and ny must be >= 2");
    const auto xs = grid_centers(window.x_min, window.x_max, nx);
    const auto ys = grid_centers(window.y_min, window.y_max, ny);

    ScalarField2D field;
    field.x_min = window.x_min;
    field.y_min = window.y_min;
    field.dx = (window.x_max - window.x_min) / nx;
    field.dy = (window.y_max - window.y_min) / ny;
    field.nx = nx;
    field.ny = ny;
    field.values.resize(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            double v = model.evaluate(xs[i], ys[j], model.params);
            if (!std::isfinite(v))
                throw std::runtime_error("evaluate_on_grid: non-finite density at (" +
                                         std::to_string(xs[i]) + ", " + std::to_string(ys[j]) +
                                         ")");
            field.at(i, j) = v;
        }
    return field;
}

ScalarField2D normalize_max(ScalarField2D field) {
    const double m = field.max_value();
    if (!(m > 0)) throw std::runtime_error("normalize_max: field maximum is not positive");
    for (double& v : field.values) v /= m;
    return field;
}

CriticalLevels duffing_critical_levels(double h, double q1, double d11) {
    if (!(q1 > 0) || !(d11 > 0))
        throw std::invalid_argument("duffing_critical_levels: q1 and D11 must be positive");
    CriticalLevels out;
    if (h < 0) {
        // Peaks at x1 = +-sqrt(-h), saddle at the origin. The saddle-to-peak
        // ratio of the density is exp(-h^2 / (4 q1^2 D11)).
        out.saddle = std::exp(-h * h / (4.0 * q1 * q1 * d11));
    }
    return out;
}

}  // namespace pbif
