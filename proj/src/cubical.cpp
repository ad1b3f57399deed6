#include "pbif/cubical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pbif/union_find.hpp"
#include "pbif/z2.hpp"
#include "persistence_detail.hpp"

namespace pbif {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_field(const ScalarField2D& field) {
    if (field.nx < 1 || field.ny < 1) throw std::invalid_argument("cubical: empty field");
    if (field.values.size() != static_cast<std::size_t>(field.nx) * field.ny)
        throw std::invalid_argument("cubical: value count does not match nx*ny");
    if (!field.all_finite()) throw std::invalid_argument("cubical: field has non-finite values");
}

}  // namespace

int CubicalFiltration::dim_of(std::uint32_t id) const {
    const int w = 2 * nx + 1;
    const int a = static_cast<int>(id) % w;
    const int b = static_cast<int>(id) / w;
    return (a & 1) + (b & 1);
}

std::pair<int, int> CubicalFiltration::coords_of(std::uint32_t id) const {
    const int w = 2 * nx + 1;
    return {static_cast<int>(id) % w, static_cast<int>(id) / w};
}

int CubicalFiltration::faces_of(std::uint32_t id, std::uint32_t out[4]) const {
    const int w = 2 * nx + 1;
    const int a = static_cast<int>(id) % w;
    const int b = static_cast<int>(id) / w;
    int n = 0;
    if (a & 1) {
        out[n++] = id - 1;
        out[n++] = id + 1;
    }
    if (b & 1) {
        out[n++] = id - static_cast<std::uint32_t>(w);
        out[n++] = id + static_cast<std::uint32_t>(w);
    }
    return n;
}

CubicalFiltration build_filtration(const ScalarField2D& field, Direction direction) {
    check_field(field);
    const int nx = field.nx, ny = field.ny;
    const int w = 2 * nx + 1, h = 2 * ny + 1;
    const bool super = direction == Direction::superlevel;

    CubicalFiltration filt;
    filt.direction = direction;
    filt.nx = nx;
    filt.ny = ny;
    filt.cell_values.resize(static_cast<std::size_t>(w) * h);

    // Squares carry the matrix entry; every lower cell the extremum of the
    // incident squares (at most four, fewer on the boundary).
    for (int b = 0; b < h; ++b) {
        for (int a = 0; a < w; ++a) {
            int ia0 = (a & 1) ? (a - 1) / 2 : a / 2 - 1;
            int ia1 = (a & 1) ? ia0 : a / 2;
            int jb0 = (b & 1) ? (b - 1) / 2 : b / 2 - 1;
            int jb1 = (b & 1) ? jb0 : b / 2;
            double v = super ? -kInf : kInf;
            for (int i = ia0; i <= ia1; ++i) {
                if (i < 0 || i >= nx) continue;
                for (int j = jb0; j <= jb1; ++j) {
                    if (j < 0 || j >= ny) continue;
                    double m = field.at(i, j);
                    v = super ? std::max(v, m) : std::min(v, m);
                }
            }
            filt.cell_values[static_cast<std::size_t>(b) * w + a] = v;
        }
    }

    filt.order.resize(filt.cell_values.size());
    for (std::uint32_t id = 0; id < filt.order.size(); ++id) filt.order[id] = id;
    std::sort(filt.order.begin(), filt.order.end(), [&](std::uint32_t x, std::uint32_t y) {
        double fx = filt.cell_values[x], fy = filt.cell_values[y];
        if (fx != fy) return super ? fx > fy : fx < fy;
        int dx = filt.dim_of(x), dy = filt.dim_of(y);
        if (dx != dy) return dx < dy;
        return x < y;  // id order is row-major in doubled coordinates
    });
    return filt;
}

PersistenceDiagram persistence(const CubicalFiltration& filt) {
    const std::uint32_t n = filt.cell_count();
    std::vector<std::uint32_t> position(n);
    for (std::uint32_t pos = 0; pos < n; ++pos) position[filt.order[pos]] = pos;

    z2::Matrix boundary;
    boundary.rows = n;
    boundary.columns.resize(n);
    std::vector<std::uint8_t> dims(n);
    std::vector<double> values(n);
    std::uint32_t faces[4];
    for (std::uint32_t pos = 0; pos < n; ++pos) {
        const std::uint32_t id = filt.order[pos];
        dims[pos] = static_cast<std::uint8_t>(filt.dim_of(id));
        values[pos] = filt.cell_values[id];
        int nf = filt.faces_of(id, faces);
        z2::Column& col = boundary.columns[pos];
        for (int k = 0; k < nf; ++k) col.push_back(position[faces[k]]);
        std::sort(col.begin(), col.end());
    }

    return detail::diagram_from_reduction(z2::reduce(boundary, dims), dims, values,
                                          filt.direction);
}

std::pair<int, int> brute_force_betti(const ScalarField2D& field, double level) {
    check_field(field);
    const int nx = field.nx, ny = field.ny;
    auto above = [&](int i, int j) { return field.at(i, j) >= level; };

    // F: squares in the superlevel set.
    long faces = 0;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            if (above(i, j)) ++faces;
    if (faces == 0) return {0, 0};

    // E and V via the max rule: a lower cell is present iff any incident
    // square is.
    long edges = 0;
    for (int j = 0; j < ny; ++j)  // vertical edges, x-boundaries of squares
        for (int i = 0; i <= nx; ++i)
            if ((i > 0 && above(i - 1, j)) || (i < nx && above(i, j))) ++edges;
    for (int j = 0; j <= ny; ++j)  // horizontal edges, y-boundaries
        for (int i = 0; i < nx; ++i)
            if ((j > 0 && above(i, j - 1)) || (j < ny && above(i, j))) ++edges;
    long verts = 0;
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
            bool present = false;
            for (int di = -1; di <= 0 && !present; ++di)
                for (int dj = -1; dj <= 0 && !present; ++dj) {
                    int ci = i + di, cj = j + dj;
                    if (ci >= 0 && ci < nx && cj >= 0 && cj < ny && above(ci, cj)) present = true;
                }
            if (present) ++verts;
        }

    // beta0: squares sharing an edge or a corner vertex are connected in the
    // closed complex, so flood fill with 8-connectivity.
    UnionFind uf(static_cast<std::size_t>(nx) * ny);
    auto cell = [&](int i, int j) { return static_cast<std::uint32_t>(j * nx + i); };
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            if (!above(i, j)) continue;
            for (int dj = 0; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    if (dj == 0 && di <= 0) continue;
                    int ni = i + di, nj = j + dj;
                    if (ni < 0 || ni >= nx || nj >= ny) continue;
                    if (above(ni, nj)) uf.unite(cell(i, j), cell(ni, nj));
                }
        }
    int beta0 = 0;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            if (above(i, j) && uf.find(cell(i, j)) == cell(i, j)) ++beta0;

    // A planar 2-complex has no 2-cycles, so chi = V - E + F = beta0 - beta1.
    long chi = verts - edges + faces;
    int beta1 = beta0 - static_cast<int>(chi);
    return {beta0, beta1};
}

}  // namespace pbif
