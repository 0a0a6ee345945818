#pragma once

#include <string>
#include <vector>

#include "sbern/jacobi_params.hpp"
#include "sbern/moments.hpp"
#include "sbern/polynomial.hpp"

namespace sbern {

/// Orthonormal bases of the levels V_0,...,V_max_degree with respect to
/// <.,.>_kappa, built by modified Gram–Schmidt (two passes) over graded-lex
/// monomials with exact moment inner products.
class OrthoBasis {
  public:
    OrthoBasis(JacobiParams kappa, int max_degree, std::vector<std::vector<Polynomial>> levels,
               double gram_condition)
        : kappa_(std::move(kappa)),
          max_degree_(max_degree),
          levels_(std::move(levels)),
          gram_condition_(gram_condition) {}

    const JacobiParams& kappa() const { return kappa_; }
    int max_degree() const { return max_degree_; }
    double gram_condition() const { return gram_condition_; }
    const std::vector<Polynomial>& level(int m) const { return levels_.at(m); }
    const std::vector<std::vector<Polynomial>>& levels() const { return levels_; }

    /// All elements of levels 0..n flattened (an orthonormal basis of Pi_n).
    std::vector<Polynomial> flattened(int n) const;

    /// Orthogonal projection onto V_m: proj_m f = sum_u <f,u> u.
    Polynomial project(const Polynomial& f, int m) const;

    /// Largest orthonormality residual max |<u,v> - delta_uv| over stored
    /// elements (diagnostic; recomputed from exact moments).
    double orthonormality_residual() const;

  private:
    JacobiParams kappa_;
    int max_degree_;
    std::vector<std::vector<Polynomial>> levels_;
    double gram_condition_;
};

/// Build the basis; throws (with condition diagnostics in the message) if
/// orthogonality cannot be held to 1e-8.
OrthoBasis build_basis(const JacobiParams& kappa, int max_degree);

/// P_{e1}: the degree-n Jacobi polynomial P_n^{(|k|-k_1+d-1, k_1)}(2x_1 - 1),
/// an element of V_n.
Polynomial special_p_e1(int n, const JacobiParams& kappa);

/// R_{e1}: P_n^{(|k|-k_{d+1}+d-1, k_{d+1})}(1 - 2|x|); also in V_n, and
/// annihilated by every pair derivative d_i - d_j, i < j <= d.
Polynomial special_r_e1(int n, const JacobiParams& kappa);

/// Versioned JSON cache of a basis, keyed by (d, max_degree, kappa).
void save_basis(const OrthoBasis& basis, const std::string& path);
OrthoBasis load_basis(const std::string& path);

}  // namespace sbern
