#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "pbif/diagram.hpp"

namespace pbif {

/// Flat list of d-dimensional points.
struct PointCloud {
    int dim = 2;
    std::vector<double> coords;

    std::size_t size() const { return dim > 0 ? coords.size() / dim : 0; }
    std::span<const double> point(std::size_t i) const {
        return {coords.data() + i * dim, static_cast<std::size_t>(dim)};
    }
    void push(std::span<const double> p) { coords.insert(coords.end(), p.begin(), p.end()); }
};

double distance(const PointCloud& cloud, std::uint32_t i, std::uint32_t j);

/// Simplex of dimension <= 2 with its filtration value (max pairwise distance).
struct Simplex {
    std::uint8_t dim = 0;
    std::array<std::uint32_t, 3> v{};  // vertex ids, ascending; unused slots = UINT32_MAX
    double value = 0.0;
};

/// Rips filtration: simplices sorted by (value, dim, lexicographic vertices).
struct RipsFiltration {
    int max_dim = 2;
    std::vector<Simplex> simplices;
};

/// All simplices of diameter <= r_max up to max_dim (1 or 2).
RipsFiltration rips_filtration(const PointCloud& cloud, double r_max, int max_dim);

/// Sublevel persistence of a Rips filtration; H0 classes are born at 0.
PersistenceDiagram rips_persistence(const RipsFiltration& filt);

/// Fixed-scale Rips complex. Vertex ids refer to the source cloud, so a
/// complex over a subset of the vertices of another complex at the same
/// scale is a genuine subcomplex with shared ids.
struct SimplicialComplex {
    std::vector<std::uint32_t> vertices;                  // ascending cloud ids
    std::vector<std::array<std::uint32_t, 2>> edges;      // lex-sorted pairs
    std::vector<std::array<std::uint32_t, 3>> triangles;  // lex-sorted triples
};

SimplicialComplex complex_at(const PointCloud& cloud, double scale, int max_dim);

/// Same, restricted to a subset of the cloud's points (ids kept global).
SimplicialComplex complex_at(const PointCloud& cloud, std::span<const std::uint32_t> subset,
                             double scale, int max_dim);

}  // namespace pbif
