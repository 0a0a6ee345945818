#include "sbern/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace sbern {

GaussRule gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_jacobi: need n >= 1");
    if (!(a > -1.0) || !(b > -1.0)) throw std::invalid_argument("gauss_jacobi: exponents <= -1");
    Eigen::VectorXd diag(n), sub(std::max(0, n - 1));
    const double ab = a + b;
    diag(0) = (b - a) / (ab + 2.0);
    for (int k = 1; k < n; ++k) {
        const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
        diag(k) = (b * b - a * a) / den;
    }
    for (int k = 1; k < n; ++k) {
        double beta;
        if (k == 1)
            beta = 4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
        else
            beta = 4.0 * k * (k + a) * (k + b) * (k + ab) /
                   ((2.0 * k + ab) * (2.0 * k + ab) * (2.0 * k + ab + 1.0) * (2.0 * k + ab - 1.0));
        sub(k - 1) = std::sqrt(beta);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw std::runtime_error("gauss_jacobi: eigensolver failed");
    const double mu0 =
        std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                 std::lgamma(ab + 2.0));
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = es.eigenvalues()(i);
        const double v = es.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v * v;
    }
    return rule;
}

GaussRule gauss_jacobi_01(int n, double a, double b) {
    GaussRule r = gauss_jacobi(n, a, b);
    const double scale = std::pow(0.5, a + b + 1.0);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = 0.5 * (1.0 + r.nodes[i]);
        r.weights[i] *= scale;
    }
    return r;
}

namespace {

struct RawCubature {
    std::vector<std::vector<double>> nodes;  // points of the d-dim simplex
    std::vector<double> weights;
};

// Unnormalized iterated-map cubature for int_{simplex^d} f(x) prod x_i^{e_i}
// (1-|x|)^{e_{d+1}} dx with e = exponents (size d+1), exact to `degree`.
RawCubature duffy_cubature(const std::vector<double>& e, int degree) {
    const int d = static_cast<int>(e.size()) - 1;
    const int m = std::max(1, (degree + 2) / 2);
    std::vector<GaussRule> axis(d);
    for (int j = 0; j < d; ++j) {
        double tail = d - 1 - j;  // Jacobian power of (1-u_j)
        for (int k = j + 1; k <= d; ++k) tail += e[k];
        axis[j] = gauss_jacobi_01(m, tail, e[j]);
    }
    RawCubature out;
    std::vector<int> idx(d, 0);
    std::vector<double> x(d);
    while (true) {
        double w = 1.0, remaining = 1.0;
        for (int j = 0; j < d; ++j) {
            const double u = axis[j].nodes[idx[j]];
            x[j] = u * remaining;
            remaining *= (1.0 - u);
            w *= axis[j].weights[idx[j]];
        }
        out.nodes.push_back(x);
        out.weights.push_back(w);
        int j = d - 1;
        while (j >= 0 && ++idx[j] == m) idx[j--] = 0;
        if (j < 0) break;
    }
    return out;
}

}  // namespace

Cubature build_cubature(const JacobiParams& kappa, int exact_degree, double radial_shift) {
    if (exact_degree < 0 || exact_degree > 200)
        throw std::invalid_argument("build_cubature: exact_degree out of range");
    const int d = kappa.dim();
    const double bk = kappa.b_kappa();
    Cubature cub;
    cub.exact_degree = exact_degree;
    if (radial_shift == 0.0) {
        RawCubature raw = duffy_cubature(kappa.kappa(), exact_degree);
        for (std::size_t i = 0; i < raw.nodes.size(); ++i) {
            cub.nodes.emplace_back(raw.nodes[i]);
            cub.weights.push_back(bk * raw.weights[i]);
        }
        return cub;
    }
    // radial-angular: x = s z, dx = s^{d-1} ds dz; the |x|^shift factor joins
    // the radial exponent.
    double radial_b = radial_shift + d - 1;
    for (int i = 1; i <= d; ++i) radial_b += kappa.kappa(i);
    if (!(radial_b > -1.0))
        throw std::invalid_argument("build_cubature: invalid exponent combination");
    const int m = std::max(1, (exact_degree + 2) / 2);
    GaussRule radial = gauss_jacobi_01(m, kappa.kappa(d + 1), radial_b);
    RawCubature section;
    if (d == 1) {
        section.nodes.push_back({1.0});
        section.weights.push_back(1.0);
    } else {
        std::vector<double> e(kappa.kappa().begin(), kappa.kappa().end() - 1);
        section = duffy_cubature(e, exact_degree);  // (d-1)-dim, slack carries kappa_d
    }
    std::vector<double> x(d);
    for (int r = 0; r < m; ++r) {
        const double s = radial.nodes[r];
        for (std::size_t q = 0; q < section.nodes.size(); ++q) {
            double zsum = 0.0;
            for (int j = 0; j + 1 < d; ++j) {
                x[j] = s * section.nodes[q][j];
                zsum += section.nodes[q][j];
            }
            x[d - 1] = s * (1.0 - zsum);
            cub.nodes.emplace_back(x);
            cub.weights.push_back(bk * radial.weights[r] * section.weights[q]);
        }
    }
    return cub;
}

Cubature build_axis_cubature(const JacobiParams& kappa, int exact_degree, int ell) {
    const int d = kappa.dim();
    if (ell < 1 || ell > d) throw std::out_of_range("build_axis_cubature: ell out of range");
    // swap kappa_ell into the slack slot
    std::vector<double> kperm;
    for (int i = 1; i <= d + 1; ++i)
        if (i != ell) kperm.push_back(kappa.kappa(i));
    kperm.push_back(kappa.kappa(ell));
    Cubature swapped = build_cubature(JacobiParams(kperm), exact_degree, -1.0);
    Cubature out;
    out.exact_degree = exact_degree;
    out.weights = swapped.weights;
    std::vector<double> x(d);
    for (const auto& y : swapped.nodes) {
        const auto yb = y.barycentric();
        int src = 0;
        for (int i = 0; i < d; ++i) x[i] = (i == ell - 1) ? yb[d] : yb[src++];
        out.nodes.emplace_back(x);
    }
    return out;
}

}  // namespace sbern
