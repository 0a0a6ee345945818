#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace sbern {

/// Values P_0^{(a,b)}(t), ..., P_m^{(a,b)}(t) by the three-term recurrence
/// (standard normalization P_n(1) = binom(n+a, n)).
void jacobi_values(int m, double a, double b, double t, std::vector<double>& out);

/// d^k/dt^k P_n^{(a,b)}(t) for k = 0 or 1.
double jacobi_eval(int n, double a, double b, double t, int deriv = 0);

/// P_n^{(a,b)}(1) = binom(n+a, n).
double jacobi_at_one(int n, double a, double b);

/// Squared norm of P_n^{(a,b)} under the mass-one normalized weight
/// c_{a,b} (1-t)^a (1+t)^b on [-1,1]; fixes the kernel normalization so that
/// sum_{j<=m} P_j(s)P_j(t)/h_j is the degree-m reproducing kernel.
double jacobi_h(int n, double a, double b);

/// Kernel term P_j(s) P_j(t) / h_j.
double jacobi_kernel_term(int j, double a, double b, double s, double t);

/// The paper-normalized component Z_j(t) = P_j(1) P_j(t) / h_j.
double jacobi_z(int j, double a, double b, double t);

/// Admissible cutoff: == 1 on [0,1], == 0 on [2,inf), C^inf, nonincreasing,
/// built from exponential bump ratios.
struct CutoffFunction {
    double operator()(double t) const {
        if (t <= 1.0) return 1.0;
        if (t >= 2.0) return 0.0;
        const double s1 = std::exp(-1.0 / (2.0 - t));
        const double s2 = std::exp(-1.0 / (t - 1.0));
        return s1 / (s1 + s2);
    }
};

/// One-dimensional localized kernel L_n^{(a,b)}(t) = sum_{j<=2n} cutoff(j/n) Z_j(t)
/// and its t-derivatives (deriv = 0 or 1).
double localized_1d(int n, double a, double b, double t, const CutoffFunction& cutoff,
                    int deriv = 0);

/// Two-argument version sum_{j<=2n} cutoff(j/n) P_j(s)P_j(t)/h_j (reproduces
/// polynomials of degree <= n under the normalized weight).
double localized_1d_pair(int n, double a, double b, double s, double t,
                         const CutoffFunction& cutoff);

}  // namespace sbern
