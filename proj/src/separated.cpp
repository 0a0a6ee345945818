#include "sbern/separated.hpp"

#include <cmath>
#include <stdexcept>

namespace sbern {

SeparatedSet separated_set(int dim, double epsilon, int probe_density) {
    const double half_pi = 0.5 * std::acos(-1.0);
    if (!(epsilon > 0.0) || !(epsilon < half_pi))
        throw std::invalid_argument("separated_set: epsilon must lie in (0, pi/2)");
    if (probe_density < 1) throw std::invalid_argument("separated_set: probe_density < 1");
    const double h = half_pi / probe_density;
    if (h > 0.25 * epsilon)
        throw std::invalid_argument(
            "separated_set: probe grid too coarse (spacing must be <= eps/4)");
    const std::vector<SimplexPoint> probes = metric_grid(dim, h);

    SeparatedSet out;
    out.epsilon = epsilon;
    for (const auto& p : probes) {
        bool far = true;
        for (const auto& s : out.points) {
            if (distance(p, s) < epsilon) {
                far = false;
                break;
            }
        }
        if (far) out.points.push_back(p);
    }
    // greedy selection covers every probe by construction; verify anyway
    out.maximal = true;
    for (const auto& p : probes) {
        bool covered = false;
        for (const auto& s : out.points) {
            if (distance(p, s) <= epsilon) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            out.maximal = false;
            break;
        }
    }
    return out;
}

}  // namespace sbern
