#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace sbern {

/// Pairwise (cascade) summation; error grows like log(n)·eps instead of n·eps.
inline double pairwise_sum(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

/// Deterministic, platform-independent random stream (splitmix64 core).
/// All randomized sweeps in the toolkit draw from this so that a fixed seed
/// reproduces byte-identical reports.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0,1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Marsaglia polar method (no libm distribution
    /// objects, keeps streams portable).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Halton low-discrepancy sequence; `seed` offsets the index so runs are
/// seedable yet deterministic.
class Halton {
  public:
    Halton(int dim, std::uint64_t seed) : dim_(dim), index_(1 + (seed % 1024) * 4096) {
        static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
        if (dim < 1 || dim > 12) throw std::invalid_argument("Halton: dim out of range");
        for (int i = 0; i < dim; ++i) bases_.push_back(primes[i]);
    }

    /// Next point in [0,1)^dim.
    void next(std::span<double> out) {
        for (int i = 0; i < dim_; ++i) out[i] = radical_inverse(index_, bases_[i]);
        ++index_;
    }

  private:
    static double radical_inverse(std::uint64_t n, int base) {
        double inv = 1.0 / base, f = inv, r = 0.0;
        while (n > 0) {
            r += f * static_cast<double>(n % base);
            n /= base;
            f *= inv;
        }
        return r;
    }

    int dim_;
    std::uint64_t index_;
    std::vector<int> bases_;
};

/// Chebyshev series on [-R, R]; exact carrier for the collapsed kernel
/// integrals (every intermediate there is a polynomial of known degree).
struct ChebSeries {
    double radius = 1.0;
    std::vector<double> coeffs;  // a_0 + sum a_j T_j(s/R)

    double operator()(double s) const {
        const double x = (radius > 0.0) ? s / radius : 0.0;
        // Clenshaw
        double b1 = 0.0, b2 = 0.0;
        for (std::size_t j = coeffs.size(); j-- > 1;) {
            const double b0 = 2.0 * x * b1 - b2 + coeffs[j];
            b2 = b1;
            b1 = b0;
        }
        return x * b1 - b2 + (coeffs.empty() ? 0.0 : coeffs[0]);
    }

    /// Derivative series (d/ds), exact.
    ChebSeries derivative() const {
        const std::size_t n = coeffs.size();
        ChebSeries d;
        d.radius = radius;
        if (n <= 1) {
            d.coeffs.assign(1, 0.0);
            return d;
        }
        d.coeffs.assign(n - 1, 0.0);
        std::vector<double> c(n + 1, 0.0);
        for (std::size_t j = n - 1; j >= 1; --j) {
            c[j - 1] = c[j + 1] + 2.0 * static_cast<double>(j) * coeffs[j];
            if (j == 1) break;
        }
        c[0] *= 0.5;
        for (std::size_t j = 0; j < n - 1; ++j) d.coeffs[j] = c[j] / radius;
        return d;
    }
};

/// Precomputed discrete cosine transform at the Chebyshev–Gauss nodes; fits
/// are exact for polynomials of degree <= `degree`.
class ChebTransform {
  public:
    explicit ChebTransform(int degree) : m_(degree + 1), nodes_(m_), matrix_(m_ * m_) {
        const double pi = std::acos(-1.0);
        for (int k = 0; k < m_; ++k) nodes_[k] = std::cos(pi * (k + 0.5) / m_);
        for (int j = 0; j < m_; ++j) {
            const double scale = (j == 0 ? 1.0 : 2.0) / m_;
            for (int k = 0; k < m_; ++k)
                matrix_[j * m_ + k] = scale * std::cos(j * pi * (k + 0.5) / m_);
        }
    }

    int size() const { return m_; }
    /// Sample abscissae of [-1,1]; scale by the radius for other intervals.
    const std::vector<double>& nodes() const { return nodes_; }

    ChebSeries fit(double radius, const std::vector<double>& values) const {
        ChebSeries s;
        s.radius = radius;
        s.coeffs.assign(m_, 0.0);
        for (int j = 0; j < m_; ++j) {
            double acc = 0.0;
            const double* row = matrix_.data() + static_cast<std::size_t>(j) * m_;
            for (int k = 0; k < m_; ++k) acc += row[k] * values[k];
            s.coeffs[j] = acc;
        }
        return s;
    }

  private:
    int m_;
    std::vector<double> nodes_;
    std::vector<double> matrix_;
};

/// Fit a Chebyshev series of degree `degree` from point values of `f` at the
/// Chebyshev–Gauss nodes of [-R, R]; exact when f is a polynomial of degree
/// <= `degree`.
template <typename F>
ChebSeries cheb_fit(F&& f, double radius, int degree) {
    const ChebTransform dct(degree);
    std::vector<double> vals(dct.size());
    for (int k = 0; k < dct.size(); ++k) vals[k] = f(radius * dct.nodes()[k]);
    return dct.fit(radius, vals);
}

}  // namespace sbern
