#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sbern {

/// Jacobi exponent vector kappa = (k_1,...,k_{d+1}) on the simplex, with the
/// derived scalars used throughout: |kappa|, the mass normalizer b_kappa, the
/// kernel normalizer a_kappa and the spectral eigenvalues lambda_n.
class JacobiParams {
  public:
    explicit JacobiParams(std::vector<double> kappa) : kappa_(std::move(kappa)) {
        if (kappa_.size() < 2) throw std::invalid_argument("JacobiParams: need d+1 >= 2 entries");
        for (double k : kappa_) {
            if (!(k > -1.0)) throw std::invalid_argument("JacobiParams: each kappa_i must be > -1");
            total_ += k;
        }
    }

    static JacobiParams zero(int dim) { return JacobiParams(std::vector<double>(dim + 1, 0.0)); }

    int dim() const { return static_cast<int>(kappa_.size()) - 1; }
    const std::vector<double>& kappa() const { return kappa_; }
    double kappa(int i) const { return kappa_.at(i - 1); }  // 1-based, i in 1..d+1
    double total() const { return total_; }                 // |kappa|

    /// Gamma(|k|+d+1) / prod Gamma(k_i+1); normalizes W_kappa to unit mass.
    double b_kappa() const {
        double lg = std::lgamma(total_ + dim() + 1);
        for (double k : kappa_) lg -= std::lgamma(k + 1.0);
        return std::exp(lg);
    }

    /// prod Gamma(k_i+1) / (sqrt(pi) Gamma(k_i+1/2)); normalizes the kernel
    /// t-integral so that P_0(x,y) = 1.
    double a_kappa() const {
        double lg = 0.0;
        const double half_log_pi = 0.5 * std::log(std::acos(-1.0));
        for (double k : kappa_) lg += std::lgamma(k + 1.0) - std::lgamma(k + 0.5) - half_log_pi;
        return std::exp(lg);
    }

    /// Spectral eigenvalue lambda_n = n(n+|kappa|+d).
    double lambda(int n) const { return static_cast<double>(n) * (n + total_ + dim()); }

    bool all_nonnegative() const {
        for (double k : kappa_)
            if (k < 0.0) return false;
        return true;
    }

    /// Kernel operations require kappa_i >= 0; reject otherwise.
    void require_nonnegative() const {
        if (!all_nonnegative())
            throw std::invalid_argument("kernel operations require every kappa_i >= 0");
    }

    /// Weight value prod x_i^{k_i} (1-|x|)^{k_{d+1}} at barycentric tuple b
    /// (size d+1).
    double weight(const std::vector<double>& bary) const {
        double w = 1.0;
        for (std::size_t i = 0; i < kappa_.size(); ++i) {
            if (kappa_[i] == 0.0) continue;
            w *= std::pow(std::max(bary[i], 0.0), kappa_[i]);
        }
        return w;
    }

  private:
    std::vector<double> kappa_;
    double total_ = 0.0;
};

}  // namespace sbern
