#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace sbern {

/// A point of the closed simplex {x >= 0, |x| <= 1} with its cached slack
/// 1-|x|. Coordinates within 1e-14 of the boundary are snapped onto it.
class SimplexPoint {
  public:
    explicit SimplexPoint(std::vector<double> coords) : coords_(std::move(coords)) {
        double sum = 0.0;
        for (double& c : coords_) {
            if (c < -1e-14) throw std::invalid_argument("SimplexPoint: negative coordinate");
            if (c < 0.0) c = 0.0;
            sum += c;
        }
        slack_ = 1.0 - sum;
        if (slack_ < -1e-14) throw std::invalid_argument("SimplexPoint: coordinates exceed 1");
        if (slack_ < 0.0) slack_ = 0.0;
    }

    int dim() const { return static_cast<int>(coords_.size()); }
    const std::vector<double>& coords() const { return coords_; }
    double operator[](int i) const { return coords_[i]; }  // 0-based
    double slack() const { return slack_; }

    /// Barycentric coordinate, i in 1..d+1 (i = d+1 is the slack).
    double bary(int i) const { return (i == dim() + 1) ? slack_ : coords_.at(i - 1); }

    std::vector<double> barycentric() const {
        std::vector<double> b = coords_;
        b.push_back(slack_);
        return b;
    }

  private:
    std::vector<double> coords_;
    double slack_ = 1.0;
};

/// Intrinsic distance d(x,y) = arccos( sum_i sqrt(x_i y_i) + sqrt(slack_x slack_y) ),
/// values in [0, pi/2]; the arccos argument is clamped to [-1,1].
inline double distance(const SimplexPoint& x, const SimplexPoint& y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("distance: dimension mismatch");
    double c = std::sqrt(x.slack() * y.slack());
    for (int i = 0; i < x.dim(); ++i) c += std::sqrt(x[i] * y[i]);
    c = std::min(1.0, std::max(-1.0, c));
    return std::acos(c);
}

/// Sphere-octant lift u = sqrt(barycentric); the intrinsic distance is the
/// geodesic angle between lifts.
inline std::vector<double> octant_lift(const SimplexPoint& x) {
    std::vector<double> u(x.dim() + 1);
    for (int i = 0; i < x.dim(); ++i) u[i] = std::sqrt(x[i]);
    u[x.dim()] = std::sqrt(x.slack());
    return u;
}

SimplexPoint point_from_lift(std::span<const double> u);

/// Walk a geodesic from x toward y and stop at distance `dist` from x
/// (requires dist <= d(x,y)).
SimplexPoint geodesic_point(const SimplexPoint& x, const SimplexPoint& y, double dist);

/// Deterministic grid on the simplex that is (approximately) uniform in the
/// intrinsic metric: an angular lattice of spacing <= h on the sphere octant,
/// mapped down. Includes the boundary. Generation order is lexicographic in
/// the angle tuple.
std::vector<SimplexPoint> metric_grid(int dim, double h);

/// Uniformly-seeded interior sample (quasi-random, deterministic): rejection
/// from [0,1]^d via Halton, optionally keeping all barycentric coords >= margin.
std::vector<SimplexPoint> quasi_random_points(int dim, int count, std::uint64_t seed,
                                              double margin = 0.0);

}  // namespace sbern
