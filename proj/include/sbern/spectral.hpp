#pragma once

#include "sbern/jacobi_params.hpp"
#include "sbern/polynomial.hpp"

namespace sbern {

/// The simplex spectral operator
///   D_k f = sum_i x_i(1-x_i) d_i^2 f - 2 sum_{i<j} x_i x_j d_i d_j f
///           + sum_i (k_i + 1 - (|k|+d+1) x_i) d_i f,
/// whose eigenspaces are the orthogonal polynomial levels V_n with
/// eigenvalue -n(n+|k|+d).
Polynomial apply_spectral(const Polynomial& f, const JacobiParams& kappa);

/// Right-hand side of the symmetric decomposition of D_k, expanded by the
/// product rule against W_k. The log-derivative factors cancel the
/// denominators, so the result is a polynomial for every kappa (not just
/// kappa_i >= 1). Coefficient-wise equal to apply_spectral.
Polynomial self_adjoint_form_rhs(const Polynomial& f, const JacobiParams& kappa);

/// D_k f + lambda f with long double coefficient arithmetic; eigenfunction
/// residuals of high-degree bases sit below what double convolutions resolve.
Polynomial spectral_residual_hp(const Polynomial& f, const JacobiParams& kappa, double lambda);

}  // namespace sbern
