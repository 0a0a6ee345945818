#include "sbern/doubling.hpp"

#include <cmath>
#include <stdexcept>

#include "sbern/util.hpp"

namespace sbern {

DoublingWeightSpec DoublingWeightSpec::jacobi(JacobiParams kappa, std::string label) {
    DoublingWeightSpec w;
    w.kind_ = Kind::Jacobi;
    w.dim_ = kappa.dim();
    w.b_kappa_ = kappa.b_kappa();
    w.kappa_ = std::move(kappa);
    w.label_ = label.empty() ? "jacobi" : std::move(label);
    return w;
}

DoublingWeightSpec DoublingWeightSpec::jacobi_times_smooth(
    JacobiParams kappa, std::function<double(const SimplexPoint&)> factor, std::string label) {
    DoublingWeightSpec w;
    w.kind_ = Kind::JacobiTimesSmooth;
    w.dim_ = kappa.dim();
    w.b_kappa_ = kappa.b_kappa();
    w.kappa_ = std::move(kappa);
    w.factor_ = std::move(factor);
    w.label_ = std::move(label);
    return w;
}

DoublingWeightSpec DoublingWeightSpec::custom(std::function<double(const SimplexPoint&)> weight,
                                              int dim, std::string label) {
    DoublingWeightSpec w;
    w.kind_ = Kind::Custom;
    w.dim_ = dim;
    w.factor_ = std::move(weight);
    w.label_ = std::move(label);
    return w;
}

double DoublingWeightSpec::density(const SimplexPoint& x) const {
    switch (kind_) {
        case Kind::Jacobi:
            return b_kappa_ * kappa_->weight(x.barycentric());
        case Kind::JacobiTimesSmooth:
            return b_kappa_ * kappa_->weight(x.barycentric()) * factor_(x);
        case Kind::Custom:
            return factor_(x);
    }
    return 0.0;
}

double ball_measure(const DoublingWeightSpec& w, const SimplexPoint& x, double r, int samples,
                    std::uint64_t seed) {
    if (!(r > 0.0)) throw std::invalid_argument("ball_measure: r must be positive");
    const int d = w.dim();
    if (x.dim() != d) throw std::invalid_argument("ball_measure: dimension mismatch");
    // |sqrt(y_i) - sqrt(x_i)| <= d(x,y) bounds the ball inside an axis box
    std::vector<double> lo(d), hi(d);
    double volume = 1.0;
    for (int i = 0; i < d; ++i) {
        const double s = std::sqrt(x[i]);
        lo[i] = std::max(0.0, s - r);
        lo[i] *= lo[i];
        hi[i] = std::min(1.0, s + r);
        hi[i] *= hi[i];
        volume *= hi[i] - lo[i];
    }
    if (volume <= 0.0) return 0.0;
    Halton seq(d, seed);
    std::vector<double> u(d), y(d);
    double acc = 0.0;
    for (int k = 0; k < samples; ++k) {
        seq.next(u);
        double sum = 0.0;
        for (int i = 0; i < d; ++i) {
            y[i] = lo[i] + (hi[i] - lo[i]) * u[i];
            sum += y[i];
        }
        if (sum > 1.0) continue;
        SimplexPoint p(y);
        if (distance(x, p) > r) continue;
        acc += w.density(p);
    }
    return volume * acc / samples;
}

DoublingEstimate estimate_doubling(DoublingWeightSpec& w, int ball_samples) {
    const int d = w.dim();
    // interior barycentric lattice (all coordinates >= 1/6), small radii: the
    // index estimate tracks the interior scaling r^d rather than the larger
    // vertex exponents
    std::vector<SimplexPoint> centers;
    const int res = 6;
    std::vector<int> c(d + 1, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == d) {
            c[d] = left;
            if (left >= 1) {
                std::vector<double> coords(d);
                for (int i = 0; i < d; ++i) coords[i] = static_cast<double>(c[i]) / res;
                centers.emplace_back(coords);
            }
            return;
        }
        for (int k = 1; k <= left - (d - pos); ++k) {
            c[pos] = k;
            rec(pos + 1, left - k);
        }
    };
    rec(0, res);

    const std::vector<double> radii{0.0025, 0.005, 0.01};
    const int mmax = 3;
    double constant = 0.0;
    double sxx = 0.0, sxy = 0.0, sx = 0.0, sy = 0.0;
    long count = 0;
    for (const auto& x : centers) {
        for (double r : radii) {
            std::vector<double> meas(mmax + 1);
            for (int m = 0; m <= mmax; ++m)
                meas[m] = ball_measure(w, x, std::ldexp(r, m), ball_samples);
            if (meas[0] <= 0.0) continue;
            constant = std::max(constant, meas[1] / meas[0]);
            for (int m = 1; m <= mmax; ++m) {
                const double lr = std::log2(meas[m] / meas[0]);
                sx += m;
                sy += lr;
                sxx += static_cast<double>(m) * m;
                sxy += m * lr;
                ++count;
            }
        }
    }
    DoublingEstimate est;
    est.constant = constant;
    est.index = (count * sxy - sx * sy) / std::max(1e-12, count * sxx - sx * sx);
    w.estimated_doubling_constant = est.constant;
    w.estimated_doubling_index = est.index;
    return est;
}

}  // namespace sbern
