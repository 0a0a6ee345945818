#pragma once

#include <functional>
#include <vector>

#include "sbern/geometry.hpp"
#include "sbern/jacobi_params.hpp"
#include "sbern/polynomial.hpp"

namespace sbern {

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss–Jacobi rule: sum w_i f(t_i) = int_{-1}^{1} f(t) (1-t)^a (1+t)^b dt,
/// exact for polynomials of degree <= 2n-1. Golub–Welsch on the symmetric
/// tridiagonal recurrence matrix.
GaussRule gauss_jacobi(int n, double a, double b);

/// Same rule mapped to [0,1] with weight u^b (1-u)^a.
GaussRule gauss_jacobi_01(int n, double a, double b);

/// Positive cubature on the simplex against the (normalized) measure
/// b_kappa W_kappa(x) |x|^{radial_shift} dx.
struct Cubature {
    std::vector<SimplexPoint> nodes;
    std::vector<double> weights;
    int exact_degree = 0;

    double integrate(const std::function<double(const SimplexPoint&)>& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }
    double integrate(const Polynomial& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            acc += weights[i] * f.evaluate(nodes[i].coords());
        return acc;
    }
};

/// Iterated Gauss–Jacobi cubature. radial_shift = 0 uses the plain iterated
/// map x_1 = u_1, x_2 = u_2(1-u_1), ...; otherwise the radial-angular
/// factorization x = s z absorbs |x|^{radial_shift} exactly into the radial
/// Gauss–Jacobi exponent.
Cubature build_cubature(const JacobiParams& kappa, int exact_degree, double radial_shift = 0.0);

/// Cubature for b_kappa W_kappa(x) dx / (1 - x_ell): the barycentric swap that
/// sends x_ell to the slack slot reduces it to a radial_shift = -1 rule.
Cubature build_axis_cubature(const JacobiParams& kappa, int exact_degree, int ell);

}  // namespace sbern
