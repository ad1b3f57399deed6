#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pbif/diagram.hpp"
#include "pbif/field.hpp"

namespace pbif {

/// Filtered cubical complex over an nx x ny grid of squares.
///
/// Cells are addressed in doubled coordinates: (a, b) with a in [0, 2nx] and
/// b in [0, 2ny]; even coordinates are vertex directions, odd ones interval
/// directions, so dim = (a odd) + (b odd). Squares carry the matrix value of
/// their grid cell; edges and vertices carry the max (superlevel) or min
/// (sublevel) over incident squares, so faces always enter no later than
/// their cofaces.
struct CubicalFiltration {
    Direction direction = Direction::superlevel;
    int nx = 0;
    int ny = 0;
    std::vector<double> cell_values;    // indexed by cell id = b*(2nx+1) + a
    std::vector<std::uint32_t> order;   // cell ids in filtration order

    std::uint32_t cell_count() const { return static_cast<std::uint32_t>(cell_values.size()); }
    int dim_of(std::uint32_t id) const;
    std::pair<int, int> coords_of(std::uint32_t id) const;  // (a, b)
    double value_of(std::uint32_t id) const { return cell_values[id]; }
    /// Codimension-1 faces; writes up to 4 ids, returns how many.
    int faces_of(std::uint32_t id, std::uint32_t out[4]) const;
};

/// Build the filtered cubical complex of a field. Superlevel sorts by
/// descending value, sublevel ascending; ties broken by (dim, row-major).
CubicalFiltration build_filtration(const ScalarField2D& field, Direction direction);

/// Persistence diagram of a cubical filtration via Z2 matrix reduction.
PersistenceDiagram persistence(const CubicalFiltration& filt);

/// Independent (beta0, beta1) of the superlevel complex at one level:
/// flood fill over squares for beta0, Euler characteristic V - E + F for
/// beta1 = beta0 - chi.
std::pair<int, int> brute_force_betti(const ScalarField2D& field, double level);

}  // namespace pbif
