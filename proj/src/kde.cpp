#include "pbif/kde.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace pbif {

namespace {

void check_model(const KdeModel& model) {
    if (model.samples.size() == 0) throw std::invalid_argument("kde: no samples");
    if (model.bandwidths.size() != static_cast<std::size_t>(model.samples.dim))
        throw std::invalid_argument("kde: one bandwidth per dimension required");
    for (double h : model.bandwidths)
        if (!(h > 0)) throw std::invalid_argument("kde: bandwidths must be positive");
}

}  // namespace

std::vector<double> scott_bandwidth(const PointCloud& cloud) {
    const std::size_t n = cloud.size();
    const int d = cloud.dim;
    if (n < 2) throw std::invalid_argument("scott_bandwidth: need at least 2 samples");

    std::vector<double> mean(d, 0.0), var(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k) mean[k] += cloud.coords[i * d + k];
    for (int k = 0; k < d; ++k) mean[k] /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k) {
            double c = cloud.coords[i * d + k] - mean[k];
            var[k] += c * c;
        }

    const double factor = std::pow(static_cast<double>(n), -1.0 / (d + 4));
    std::vector<double> h(d);
    for (int k = 0; k < d; ++k) {
        double s = std::sqrt(var[k] / static_cast<double>(n - 1));
        if (!(s > 0)) throw std::invalid_argument("scott_bandwidth: zero variance in dimension " +
                                                  std::to_string(k));
        h[k] = factor * s;
    }
    return h;
}

KdeModel make_kde(PointCloud samples) {
    KdeModel model;
    model.bandwidths = scott_bandwidth(samples);
    model.samples = std::move(samples);
    return model;
}

double kde_evaluate(const KdeModel& model, std::span<const double> x) {
    check_model(model);
    const int d = model.samples.dim;
    if (x.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("kde_evaluate: query dimension mismatch");

    const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    double norm = 1.0;
    for (int k = 0; k < d; ++k) norm *= inv_sqrt_2pi / model.bandwidths[k];

    const std::size_t n = model.samples.size();
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double e = 0.0;
        for (int k = 0; k < d; ++k) {
            double u = (x[k] - model.samples.coords[j * d + k]) / model.bandwidths[k];
            e += u * u;
        }
        sum += std::exp(-0.5 * e);
    }
    return norm * sum / static_cast<double>(n);
}

namespace {

// Cell-binned evaluation for large 2D sample sets. Kernel tails are cut at
// six bandwidths (relative error ~e^-18, far below the level resolution the
// estimator works at); cells are one cutoff wide, so a query only visits its
// 3x3 neighborhood.
struct BinnedKde {
    const KdeModel& model;
    double ox, oy, cw, ch;
    int ncx, ncy;
    std::vector<std::uint32_t> start;  // CSR over cells
    std::vector<std::uint32_t> ids;

    explicit BinnedKde(const KdeModel& m) : model(m) {
        const auto& s = m.samples;
        const std::size_t n = s.size();
        cw = 6.0 * m.bandwidths[0];
        ch = 6.0 * m.bandwidths[1];
        double xhi = ox = s.coords[0], yhi = oy = s.coords[1];
        for (std::size_t i = 0; i < n; ++i) {
            ox = std::min(ox, s.coords[2 * i]);
            xhi = std::max(xhi, s.coords[2 * i]);
            oy = std::min(oy, s.coords[2 * i + 1]);
            yhi = std::max(yhi, s.coords[2 * i + 1]);
        }
        ncx = static_cast<int>((xhi - ox) / cw) + 1;
        ncy = static_cast<int>((yhi - oy) / ch) + 1;
        auto cell = [&](std::size_t i) {
            int cx = std::min(static_cast<int>((s.coords[2 * i] - ox) / cw), ncx - 1);
            int cy = std::min(static_cast<int>((s.coords[2 * i + 1] - oy) / ch), ncy - 1);
            return static_cast<std::uint32_t>(cy * ncx + cx);
        };
        start.assign(static_cast<std::size_t>(ncx) * ncy + 1, 0);
        for (std::size_t i = 0; i < n; ++i) ++start[cell(i) + 1];
        for (std::size_t c = 1; c < start.size(); ++c) start[c] += start[c - 1];
        ids.resize(n);
        std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
        for (std::size_t i = 0; i < n; ++i) ids[fill[cell(i)]++] = static_cast<std::uint32_t>(i);
    }

    double eval(double x, double y) const {
        const auto& s = model.samples;
        const double ih1 = 1.0 / model.bandwidths[0], ih2 = 1.0 / model.bandwidths[1];
        const int qx = static_cast<int>(std::floor((x - ox) / cw));
        const int qy = static_cast<int>(std::floor((y - oy) / ch));
        double sum = 0.0;
        for (int cy = std::max(qy - 1, 0); cy <= std::min(qy + 1, ncy - 1); ++cy)
            for (int cx = std::max(qx - 1, 0); cx <= std::min(qx + 1, ncx - 1); ++cx) {
                const std::uint32_t c = cy * ncx + cx;
                for (std::uint32_t k = start[c]; k < start[c + 1]; ++k) {
                    const std::uint32_t i = ids[k];
                    const double u = (x - s.coords[2 * i]) * ih1;
                    double e = u * u;
                    if (e > 60.0) continue;
                    const double v = (y - s.coords[2 * i + 1]) * ih2;
                    e += v * v;
                    if (e > 60.0) continue;
                    sum += std::exp(-0.5 * e);
                }
            }
        const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
        return sum * inv_sqrt_2pi * inv_sqrt_2pi * ih1 * ih2 / static_cast<double>(s.size());
    }
};

}  // namespace

std::vector<double> kde_evaluate_all(const KdeModel& model, const PointCloud& queries) {
    check_model(model);
    std::vector<double> out;
    out.reserve(queries.size());
    if (model.samples.dim == 2 && queries.dim == 2 && model.samples.size() >= 4096 &&
        queries.size() >= 64) {
        BinnedKde binned(model);
        for (std::size_t i = 0; i < queries.size(); ++i)
            out.push_back(binned.eval(queries.coords[2 * i], queries.coords[2 * i + 1]));
        return out;
    }
    for (std::size_t i = 0; i < queries.size(); ++i)
        out.push_back(kde_evaluate(model, queries.point(i)));
    return out;
}

double scalar_bandwidth(const KdeModel& model) {
    check_model(model);
    double logsum = 0.0;
    for (double h : model.bandwidths) logsum += std::log(h);
    return std::exp(logsum / static_cast<double>(model.bandwidths.size()));
}

ScalarField2D kde_on_grid(const KdeModel& model, const Window& window, int nx, int ny) {
    check_model(model);
    if (model.samples.dim != 2) throw std::invalid_argument("kde_on_grid: 2D models only");
    if (nx < 2 || ny < 2) throw std::invalid_argument("kde_on_grid: nx and ny must be >= 2");
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
            double q[2] = {xs[i], ys[j]};
            field.at(i, j) = kde_evaluate(model, q);
        }
    return field;
}

}  // namespace pbif
