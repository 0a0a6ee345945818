#pragma once

#include <vector>

#include "sbern/geometry.hpp"

namespace sbern {

struct SeparatedSet {
    double epsilon = 0.0;
    std::vector<SimplexPoint> points;
    bool maximal = false;
};

/// Greedy maximal eps-separated subset of a metric probe grid of angular
/// resolution (pi/2)/probe_density (visit order is the grid's lexicographic
/// generation order). Throws if the grid is too coarse (spacing must be
/// <= eps/4). Maximality is verified against the probe grid.
SeparatedSet separated_set(int dim, double epsilon, int probe_density);

}  // namespace sbern
