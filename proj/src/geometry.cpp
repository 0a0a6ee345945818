#include "sbern/geometry.hpp"

#include <algorithm>

#include "sbern/util.hpp"

namespace sbern {

SimplexPoint point_from_lift(std::span<const double> u) {
    std::vector<double> x(u.size() - 1);
    for (std::size_t i = 0; i + 1 < u.size(); ++i) x[i] = u[i] * u[i];
    // renormalize against roundoff so the barycentric tuple sums to 1
    double s2 = 0.0;
    for (double v : u) s2 += v * v;
    if (s2 > 0.0)
        for (double& c : x) c /= s2;
    return SimplexPoint(x);
}

SimplexPoint geodesic_point(const SimplexPoint& x, const SimplexPoint& y, double dist) {
    const double full = distance(x, y);
    if (full < 1e-15) return x;
    if (dist < 0.0 || dist > full + 1e-12)
        throw std::invalid_argument("geodesic_point: dist beyond segment");
    const auto ux = octant_lift(x);
    const auto uy = octant_lift(y);
    const double st = std::sin(full);
    const double a = std::sin(full - dist) / st;
    const double b = std::sin(dist) / st;
    std::vector<double> u(ux.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = a * ux[i] + b * uy[i];
    return point_from_lift(u);
}

namespace {

// Recursive angular lattice on the sphere octant S^k_+ (k = dim). Spacing of
// neighbouring nodes is <= h along every angular direction.
void octant_grid_rec(int k, double h, std::vector<double>& u, double radius,
                     std::vector<std::vector<double>>& out) {
    const double half_pi = 0.5 * std::acos(-1.0);
    if (k == 1) {
        const int n = std::max(1, static_cast<int>(std::ceil(half_pi * radius / h)));
        for (int i = 0; i <= n; ++i) {
            const double th = half_pi * i / n;
            u.push_back(radius * std::cos(th));
            u.push_back(radius * std::sin(th));
            out.push_back(u);
            u.pop_back();
            u.pop_back();
        }
        return;
    }
    const int n = std::max(1, static_cast<int>(std::ceil(half_pi * radius / h)));
    for (int i = 0; i <= n; ++i) {
        const double th = half_pi * i / n;
        u.push_back(radius * std::cos(th));
        octant_grid_rec(k - 1, h, u, radius * std::sin(th), out);
        u.pop_back();
    }
}

}  // namespace

std::vector<SimplexPoint> metric_grid(int dim, double h) {
    if (h <= 0.0) throw std::invalid_argument("metric_grid: h must be positive");
    std::vector<std::vector<double>> lifts;
    std::vector<double> u;
    octant_grid_rec(dim, h, u, 1.0, lifts);
    std::vector<SimplexPoint> pts;
    pts.reserve(lifts.size());
    for (const auto& l : lifts) pts.push_back(point_from_lift(l));
    return pts;
}

std::vector<SimplexPoint> quasi_random_points(int dim, int count, std::uint64_t seed,
                                              double margin) {
    Halton seq(dim, seed);
    std::vector<SimplexPoint> pts;
    std::vector<double> x(dim);
    int guard = 0;
    while (static_cast<int>(pts.size()) < count && guard < 1000000) {
        ++guard;
        seq.next(x);
        double s = 0.0;
        bool ok = true;
        for (double c : x) {
            if (c < margin) ok = false;
            s += c;
        }
        if (!ok || s > 1.0 - margin) continue;
        pts.emplace_back(x);
    }
    if (static_cast<int>(pts.size()) < count)
        throw std::runtime_error("quasi_random_points: rejection failed (margin too large?)");
    return pts;
}

}  // namespace sbern
