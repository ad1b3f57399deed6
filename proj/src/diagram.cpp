#include "pbif/diagram.hpp"

namespace pbif {

int betti_at(const PersistenceDiagram& diagram, double level, int dim) {
    int count = 0;
    for (const auto& p : diagram.pairs) {
        if (p.dim != dim) continue;
        if (diagram.direction == Direction::superlevel) {
            if (p.death < level && level <= p.birth) ++count;
        } else {
            if (p.birth <= level && level < p.death) ++count;
        }
    }
    return count;
}

BettiVector betti_vector(const PersistenceDiagram& diagram, std::span<const double> levels,
                         int dim) {
    BettiVector out;
    out.dim = dim;
    out.levels.assign(levels.begin(), levels.end());
    out.counts.reserve(levels.size());
    for (double level : levels) out.counts.push_back(betti_at(diagram, level, dim));
    return out;
}

}  // namespace pbif
