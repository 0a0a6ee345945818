#include "sbern/polynomial.hpp"

#include <map>
#include <mutex>

#include "sbern/spectral.hpp"

namespace sbern {

std::shared_ptr<const MonomialBasis> monomial_table(int dim, int max_degree) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const MonomialBasis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{dim, max_degree}];
    if (!slot) slot = std::make_shared<const MonomialBasis>(dim, max_degree);
    return slot;
}

Polynomial apply_spectral(const Polynomial& f, const JacobiParams& kappa) {
    const int d = f.dim();
    if (kappa.dim() != d) throw std::invalid_argument("apply_spectral: dimension mismatch");
    const double s = kappa.total() + d + 1;
    Polynomial out(d, std::max(0, f.degree_bound()));
    for (int i = 1; i <= d; ++i) {
        const Polynomial fi = f.partial(i);
        const Polynomial xi = Polynomial::coordinate(d, i);
        out = out + (xi * (Polynomial::constant(d, 1.0) - xi)) * fi.partial(i);
        out = out + (Polynomial::constant(d, kappa.kappa(i) + 1.0) - xi * s) * fi;
        for (int j = i + 1; j <= d; ++j) {
            const Polynomial xj = Polynomial::coordinate(d, j);
            out = out - 2.0 * (xi * xj) * fi.partial(j);
        }
    }
    return out.with_degree_bound(std::max(0, f.degree_bound()));
}

Polynomial spectral_residual_hp(const Polynomial& f, const JacobiParams& kappa, double lambda) {
    const int d = f.dim();
    if (kappa.dim() != d) throw std::invalid_argument("spectral_residual_hp: dimension mismatch");
    const int bound = std::max(0, f.degree_bound());
    const auto table = monomial_table(d, bound);
    const std::size_t n = table->size();
    std::vector<long double> out(n, 0.0L);
    std::vector<int> e(d);
    const long double s = static_cast<long double>(kappa.total()) + d + 1;
    for (std::size_t m = 0; m < n; ++m) {
        if (f.coeffs()[m] == 0.0) continue;
        const long double c = f.coeffs()[m];
        const auto& a = table->exponents(m);
        out[m] += static_cast<long double>(lambda) * c;
        for (int i = 0; i < d; ++i) {
            if (a[i] >= 1) {
                // x_i d_i^2 part of x_i(1-x_i) d_i^2 : exponent alpha - e_i
                if (a[i] >= 2) {
                    e = a;
                    e[i] -= 1;
                    out[table->index_of(e)] +=
                        c * static_cast<long double>(a[i]) * (a[i] - 1);
                }
                // -x_i^2 d_i^2 keeps the exponent
                out[m] -= c * static_cast<long double>(a[i]) * (a[i] - 1);
                // (k_i + 1) d_i
                e = a;
                e[i] -= 1;
                out[table->index_of(e)] +=
                    c * (static_cast<long double>(kappa.kappa(i + 1)) + 1.0L) * a[i];
                // -(|k|+d+1) x_i d_i keeps the exponent
                out[m] -= c * s * a[i];
            }
            for (int j = i + 1; j < d; ++j) {
                if (a[i] >= 1 && a[j] >= 1)  // -2 x_i x_j d_i d_j keeps the exponent
                    out[m] -= 2.0L * c * static_cast<long double>(a[i]) * a[j];
            }
        }
    }
    Polynomial r(d, bound);
    for (std::size_t m = 0; m < n; ++m)
        if (out[m] != 0.0L) r.coeff_at(table->exponents(m)) = static_cast<double>(out[m]);
    return r;
}

Polynomial self_adjoint_form_rhs(const Polynomial& f, const JacobiParams& kappa) {
    const int d = f.dim();
    if (kappa.dim() != d) throw std::invalid_argument("self_adjoint_form_rhs: dimension mismatch");
    const double k_slack = kappa.kappa(d + 1);
    Polynomial out(d, std::max(0, f.degree_bound()));
    const Polynomial slack = Polynomial::slack(d);
    for (int i = 1; i <= d; ++i) {
        const Polynomial fi = f.partial(i);
        const Polynomial xi = Polynomial::coordinate(d, i);
        // (1/W) d_i (x_i (1-|x|) W d_i f)
        //   = d_i (x_i (1-|x|) d_i f) + k_i (1-|x|) d_i f - k_{d+1} x_i d_i f
        const Polynomial gi = (xi * slack) * fi;
        out = out + gi.partial(i) + kappa.kappa(i) * (slack * fi) - k_slack * (xi * fi);
        for (int j = i + 1; j <= d; ++j) {
            const Polynomial xj = Polynomial::coordinate(d, j);
            const Polynomial fij = f.diff_pair(i, j);
            // (1/W) d_ij (x_i x_j W d_ij f)
            //   = d_ij (x_i x_j d_ij f) + k_i x_j d_ij f - k_j x_i d_ij f
            const Polynomial gij = (xi * xj) * fij;
            out = out + (gij.partial(i) - gij.partial(j)) + kappa.kappa(i) * (xj * fij) -
                  kappa.kappa(j) * (xi * fij);
        }
    }
    return out.with_degree_bound(std::max(0, f.degree_bound()));
}

}  // namespace sbern
