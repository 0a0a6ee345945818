#pragma once

#include <vector>

#include "sbern/jacobi_params.hpp"
#include "sbern/polynomial.hpp"

namespace sbern {

/// Normalized Dirichlet moment <x^alpha, 1>_kappa where `exponents` has d+1
/// entries (the last one multiplies the slack 1-|x|):
///   b_kappa * prod Gamma(kappa_i + alpha_i + 1) / Gamma(|kappa| + |alpha| + d + 1).
/// Rejects |alpha| > 300 (gamma overflow regime).
double dirichlet_moment(const std::vector<int>& exponents, const JacobiParams& kappa);

/// Moments of all d-variate monomials of degree <= max_degree (slack exponent
/// zero), indexed like the shared monomial table.
class MomentTable {
  public:
    MomentTable(const JacobiParams& kappa, int dim, int max_degree);

    int dim() const { return dim_; }
    int max_degree() const { return max_degree_; }
    double moment(std::size_t monomial_index) const { return values_[monomial_index]; }

    /// <f, 1>_kappa for a polynomial whose degree fits the table.
    double integrate(const Polynomial& f) const;

  private:
    int dim_, max_degree_;
    std::shared_ptr<const MonomialBasis> table_;
    std::vector<double> values_;
};

/// Exact inner product <f,g>_kappa via moment expansion.
double inner_product(const Polynomial& f, const Polynomial& g, const JacobiParams& kappa);

/// Extended-precision route (long double accumulation): orthogonality
/// residuals of high-degree bases cancel ~1e8 of coefficient mass, which
/// plain double cannot certify below ~1e-8.
double inner_product_hp(const Polynomial& f, const Polynomial& g, const JacobiParams& kappa);

/// sqrt(<f,f>_kappa).
double l2_norm(const Polynomial& f, const JacobiParams& kappa);

}  // namespace sbern
