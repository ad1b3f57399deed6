#pragma once

#include <span>
#include <vector>

namespace pbif {

enum class Direction { superlevel, sublevel };

/// One persistence pair. Essential classes carry death = -inf (superlevel)
/// or +inf (sublevel).
struct PersistencePair {
    int dim = 0;
    double birth = 0.0;
    double death = 0.0;
};

/// Persistence diagram of a filtration. Superlevel pairs satisfy birth > death,
/// sublevel pairs birth < death; zero-length pairs are not stored.
struct PersistenceDiagram {
    Direction direction = Direction::superlevel;
    std::vector<PersistencePair> pairs;
};

/// Betti numbers of one dimension sampled on an ascending level grid.
struct BettiVector {
    int dim = 0;
    std::vector<double> levels;
    std::vector<int> counts;
};

/// Betti number at a level. Superlevel convention: a class is alive at L iff
/// death < L <= birth; sublevel: birth <= L < death.
int betti_at(const PersistenceDiagram& diagram, double level, int dim);

BettiVector betti_vector(const PersistenceDiagram& diagram, std::span<const double> levels, int dim);

}  // namespace pbif
