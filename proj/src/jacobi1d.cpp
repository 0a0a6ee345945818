#include "sbern/jacobi1d.hpp"

#include <stdexcept>

namespace sbern {

void jacobi_values(int m, double a, double b, double t, std::vector<double>& out) {
    if (!(a > -1.0) || !(b > -1.0)) throw std::invalid_argument("jacobi_values: parameter <= -1");
    out.resize(m + 1);
    if (m >= 0) out[0] = 1.0;
    if (m >= 1) out[1] = 0.5 * (a + b + 2.0) * t + 0.5 * (a - b);
    for (int n = 1; n < m; ++n) {
        const double c = 2.0 * n + a + b;
        const double a1 = 2.0 * (n + 1.0) * (n + a + b + 1.0) * c;
        const double a2 = (c + 1.0) * (a * a - b * b);
        const double a3 = c * (c + 1.0) * (c + 2.0);
        const double a4 = 2.0 * (n + a) * (n + b) * (c + 2.0);
        out[n + 1] = ((a2 + a3 * t) * out[n] - a4 * out[n - 1]) / a1;
    }
}

double jacobi_eval(int n, double a, double b, double t, int deriv) {
    if (deriv == 0) {
        std::vector<double> v;
        jacobi_values(n, a, b, t, v);
        return v[n];
    }
    if (deriv == 1) {
        if (n == 0) return 0.0;
        return 0.5 * (n + a + b + 1.0) * jacobi_eval(n - 1, a + 1.0, b + 1.0, t, 0);
    }
    throw std::invalid_argument("jacobi_eval: deriv must be 0 or 1");
}

double jacobi_at_one(int n, double a, double b) {
    (void)b;
    return std::exp(std::lgamma(n + a + 1.0) - std::lgamma(a + 1.0) - std::lgamma(n + 1.0));
}

double jacobi_h(int n, double a, double b) {
    const double ab = a + b;
    const double lg = std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) + std::lgamma(ab + 2.0) -
                      std::lgamma(n + ab + 1.0) - std::lgamma(n + 1.0) - std::lgamma(a + 1.0) -
                      std::lgamma(b + 1.0);
    return std::exp(lg) / (2.0 * n + ab + 1.0);
}

double jacobi_kernel_term(int j, double a, double b, double s, double t) {
    return jacobi_eval(j, a, b, s) * jacobi_eval(j, a, b, t) / jacobi_h(j, a, b);
}

double jacobi_z(int j, double a, double b, double t) {
    return jacobi_at_one(j, a, b) * jacobi_eval(j, a, b, t) / jacobi_h(j, a, b);
}

namespace {

// shared accumulation over j <= 2n with cutoff weights
double localized_sum(int n, double a, double b, double t, const CutoffFunction& cutoff, int deriv,
                     const double* s_values_at /*optional P_j(s) values*/) {
    const int jmax = 2 * n;
    std::vector<double> pt;
    std::vector<double> pt_shift;  // P_{j-1}^{(a+1,b+1)} for derivatives
    if (deriv == 0)
        jacobi_values(jmax, a, b, t, pt);
    else
        jacobi_values(jmax - 1 >= 0 ? jmax - 1 : 0, a + 1.0, b + 1.0, t, pt_shift);
    double acc = 0.0;
    for (int j = 0; j <= jmax; ++j) {
        const double w = cutoff(static_cast<double>(j) / n);
        if (w == 0.0) continue;
        const double lead = s_values_at ? s_values_at[j] : jacobi_at_one(j, a, b);
        double val;
        if (deriv == 0)
            val = pt[j];
        else
            val = (j == 0) ? 0.0 : 0.5 * (j + a + b + 1.0) * pt_shift[j - 1];
        acc += w * lead * val / jacobi_h(j, a, b);
    }
    return acc;
}

}  // namespace

double localized_1d(int n, double a, double b, double t, const CutoffFunction& cutoff, int deriv) {
    if (n < 1) throw std::invalid_argument("localized_1d: need n >= 1");
    if (deriv != 0 && deriv != 1) throw std::invalid_argument("localized_1d: deriv must be 0 or 1");
    return localized_sum(n, a, b, t, cutoff, deriv, nullptr);
}

double localized_1d_pair(int n, double a, double b, double s, double t,
                         const CutoffFunction& cutoff) {
    if (n < 1) throw std::invalid_argument("localized_1d_pair: need n >= 1");
    std::vector<double> ps;
    jacobi_values(2 * n, a, b, s, ps);
    return localized_sum(n, a, b, t, cutoff, 0, ps.data());
}

}  // namespace sbern
