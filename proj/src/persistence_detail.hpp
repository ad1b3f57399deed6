#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "pbif/diagram.hpp"
#include "pbif/z2.hpp"

namespace pbif::detail {

// Diagram extraction shared by the cubical and Rips engines: cells given in
// filtration order with their dimensions and values. Zero-length pairs are
// dropped; unpaired cycles become essential classes.
inline PersistenceDiagram diagram_from_reduction(const z2::ReducedMatrix& red,
                                                 const std::vector<std::uint8_t>& dims,
                                                 const std::vector<double>& values,
                                                 Direction direction) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    PersistenceDiagram out;
    out.direction = direction;
    const double essential_death = direction == Direction::superlevel ? -kInf : kInf;
    for (const auto& [birth, death] : red.pairing) {
        double b = values[birth], d = values[death];
        if (b != d) out.pairs.push_back({dims[birth], b, d});
    }
    for (std::uint32_t j : red.essential_columns())
        out.pairs.push_back({dims[j], values[j], essential_death});
    std::sort(out.pairs.begin(), out.pairs.end(), [](const auto& x, const auto& y) {
        if (x.dim != y.dim) return x.dim < y.dim;
        if (x.birth != y.birth) return x.birth < y.birth;
        return x.death < y.death;
    });
    return out;
}

}  // namespace pbif::detail
