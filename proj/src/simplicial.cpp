#include "pbif/simplicial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "pbif/z2.hpp"
#include "persistence_detail.hpp"

namespace pbif {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

void check_cloud(const PointCloud& cloud) {
    if (cloud.dim < 1) throw std::invalid_argument("point cloud: dimension must be >= 1");
    if (cloud.coords.size() % cloud.dim != 0)
        throw std::invalid_argument("point cloud: coordinate count not divisible by dim");
    for (double c : cloud.coords)
        if (!std::isfinite(c)) throw std::invalid_argument("point cloud: non-finite coordinate");
}

}  // namespace

double distance(const PointCloud& cloud, std::uint32_t i, std::uint32_t j) {
    double s = 0.0;
    const double* a = cloud.coords.data() + static_cast<std::size_t>(i) * cloud.dim;
    const double* b = cloud.coords.data() + static_cast<std::size_t>(j) * cloud.dim;
    for (int k = 0; k < cloud.dim; ++k) {
        double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

RipsFiltration rips_filtration(const PointCloud& cloud, double r_max, int max_dim) {
    check_cloud(cloud);
    if (max_dim < 1 || max_dim > 2) throw std::invalid_argument("rips_filtration: max_dim must be 1 or 2");
    if (!(r_max > 0)) throw std::invalid_argument("rips_filtration: r_max must be positive");

    const std::uint32_t n = static_cast<std::uint32_t>(cloud.size());
    RipsFiltration filt;
    filt.max_dim = max_dim;
    for (std::uint32_t i = 0; i < n; ++i) filt.simplices.push_back({0, {i, kNone, kNone}, 0.0});

    std::vector<std::vector<std::pair<std::uint32_t, double>>> nbr(n);  // j > i within r_max
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) {
            double d = distance(cloud, i, j);
            if (d <= r_max) {
                filt.simplices.push_back({1, {i, j, kNone}, d});
                nbr[i].push_back({j, d});
            }
        }

    if (max_dim >= 2) {
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::size_t p = 0; p < nbr[i].size(); ++p)
                for (std::size_t q = p + 1; q < nbr[i].size(); ++q) {
                    auto [j, dij] = nbr[i][p];
                    auto [k, dik] = nbr[i][q];
                    double djk = distance(cloud, j, k);
                    if (djk <= r_max)
                        filt.simplices.push_back({2, {i, j, k}, std::max({dij, dik, djk})});
                }
    }

    std::sort(filt.simplices.begin(), filt.simplices.end(), [](const Simplex& a, const Simplex& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.v < b.v;
    });
    return filt;
}

PersistenceDiagram rips_persistence(const RipsFiltration& filt) {
    const std::size_t n = filt.simplices.size();
    std::unordered_map<std::uint64_t, std::uint32_t> vertex_pos, edge_pos;
    auto edge_key = [](std::uint32_t u, std::uint32_t v) {
        return (static_cast<std::uint64_t>(u) << 32) | v;
    };

    z2::Matrix boundary;
    boundary.rows = static_cast<std::uint32_t>(n);
    boundary.columns.resize(n);
    std::vector<std::uint8_t> dims(n);
    std::vector<double> values(n);

    for (std::uint32_t pos = 0; pos < n; ++pos) {
        const Simplex& s = filt.simplices[pos];
        dims[pos] = s.dim;
        values[pos] = s.value;
        z2::Column& col = boundary.columns[pos];
        switch (s.dim) {
            case 0:
                vertex_pos[s.v[0]] = pos;
                break;
            case 1:
                col = {vertex_pos.at(s.v[0]), vertex_pos.at(s.v[1])};
                edge_pos[edge_key(s.v[0], s.v[1])] = pos;
                break;
            default:
                col = {edge_pos.at(edge_key(s.v[0], s.v[1])), edge_pos.at(edge_key(s.v[0], s.v[2])),
                       edge_pos.at(edge_key(s.v[1], s.v[2]))};
                break;
        }
        std::sort(col.begin(), col.end());
    }

    return detail::diagram_from_reduction(z2::reduce(boundary, dims), dims, values,
                                          Direction::sublevel);
}

SimplicialComplex complex_at(const PointCloud& cloud, double scale, int max_dim) {
    std::vector<std::uint32_t> all(cloud.size());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
    return complex_at(cloud, all, scale, max_dim);
}

SimplicialComplex complex_at(const PointCloud& cloud, std::span<const std::uint32_t> subset,
                             double scale, int max_dim) {
    check_cloud(cloud);
    if (scale < 0) throw std::invalid_argument("complex_at: scale must be >= 0");
    if (max_dim < 0 || max_dim > 2) throw std::invalid_argument("complex_at: max_dim must be <= 2");

    SimplicialComplex c;
    c.vertices.assign(subset.begin(), subset.end());
    std::sort(c.vertices.begin(), c.vertices.end());
    const std::size_t m = c.vertices.size();

    if (max_dim >= 1) {
        std::vector<std::vector<std::uint32_t>> nbr(m);  // local indices, ascending
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q)
                if (distance(cloud, c.vertices[p], c.vertices[q]) <= scale) {
                    c.edges.push_back({c.vertices[p], c.vertices[q]});
                    nbr[p].push_back(static_cast<std::uint32_t>(q));
                }
        if (max_dim >= 2) {
            for (std::size_t p = 0; p < m; ++p)
                for (std::size_t a = 0; a < nbr[p].size(); ++a)
                    for (std::size_t b = a + 1; b < nbr[p].size(); ++b) {
                        std::uint32_t q = nbr[p][a], r = nbr[p][b];
                        if (distance(cloud, c.vertices[q], c.vertices[r]) <= scale)
                            c.triangles.push_back(
                                {c.vertices[p], c.vertices[q], c.vertices[r]});
                    }
        }
    }
    return c;
}

}  // namespace pbif
