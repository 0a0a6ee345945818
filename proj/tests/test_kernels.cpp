#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sbern/doubling.hpp"
#include "sbern/kernels.hpp"
#include "sbern/moments.hpp"
#include "sbern/ortho_basis.hpp"
#include "sbern/suites.hpp"

using namespace sbern;

TEST_CASE("cutoff admissibility") {
    const CutoffFunction a;
    CHECK(a(0.0) == 1.0);
    CHECK(a(1.0) == 1.0);
    CHECK(a(2.0) == 0.0);
    CHECK(a(5.0) == 0.0);
    double prev = 1.0;
    for (double t = 1.0; t <= 2.0; t += 0.01) {
        const double v = a(t);
        CHECK(v >= -1e-15);
        CHECK(v <= 1.0 + 1e-15);
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
    // smooth continuation at t = 1: the first 6 finite-difference derivatives
    // stay tiny across the joint
    const double h = 0.003;
    for (int order = 1; order <= 6; ++order) {
        double fd = 0.0;
        for (int k = 0; k <= order; ++k) {
            const double sign = (order - k) % 2 == 0 ? 1.0 : -1.0;
            fd += sign * static_cast<double>(binomial(order, k)) * a(1.0 + (k - order / 2.0) * h);
        }
        CHECK(std::abs(fd) / std::pow(h, order) <= 1e-5);
    }
}

TEST_CASE("jacobi kernel terms: normalization and reproducing") {
    CHECK(jacobi_z(0, 1.5, -0.5, 0.3) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(jacobi_z(0, 0.0, 0.0, -0.7) == doctest::Approx(1.0).epsilon(1e-13));

    const double a = 1.5, b = -0.5;
    const GaussRule rule = gauss_jacobi(40, a, b);
    double mass = 0.0;
    for (double w : rule.weights) mass += w;

    // sum_{j<=m} P_j(t0) P_j(s) / h_j reproduces degree-m polynomials
    const int m = 6;
    const double t0 = 0.23;
    auto q = [](double t) { return 1.0 - 2.0 * t + 0.5 * t * t * t; };
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        double k = 0.0;
        for (int j = 0; j <= m; ++j) k += jacobi_kernel_term(j, a, b, t0, rule.nodes[i]);
        acc += rule.weights[i] / mass * k * q(rule.nodes[i]);
    }
    CHECK(acc == doctest::Approx(q(t0)).epsilon(1e-10));

    // Z_j integrates to zero against constants for j >= 1
    for (int j = 1; j <= 4; ++j) {
        double zint = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            zint += rule.weights[i] / mass * jacobi_z(j, a, b, rule.nodes[i]);
        CHECK(std::abs(zint) <= 1e-12);
    }

    // h_n pinned against a brute-force weighted line integral
    const double h3 = jacobi_h(3, a, b);
    const double raw = oracle::jacobi_line_integral_sqrt(
        [&](double t) { return jacobi_eval(3, a, b, t) * jacobi_eval(3, a, b, t); }, a);
    const double mu0_o = oracle::jacobi_line_integral_sqrt([](double) { return 1.0; }, a);
    CHECK(h3 == doctest::Approx(raw / mu0_o).epsilon(1e-6));
}

TEST_CASE("localized 1d kernel reproduces low degrees and differentiates") {
    const double a = 1.5, b = -0.5;
    const int n = 6;
    const CutoffFunction cutoff;
    const GaussRule rule = gauss_jacobi(40, a, b);
    double mass = 0.0;
    for (double w : rule.weights) mass += w;
    auto q = [](double t) { return 0.3 + t - 0.25 * t * t; };  // degree 2 <= n
    const double t0 = -0.37;
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] / mass * localized_1d_pair(n, a, b, t0, rule.nodes[i], cutoff) *
               q(rule.nodes[i]);
    CHECK(acc == doctest::Approx(q(t0)).epsilon(1e-10));

    // derivative against central differences
    for (double t : {-0.5, 0.1, 0.8}) {
        const double h = 1e-5;
        const double fd = (localized_1d(n, a, b, t + h, cutoff) -
                           localized_1d(n, a, b, t - h, cutoff)) /
                          (2 * h);
        const double an = localized_1d(n, a, b, t, cutoff, 1);
        CHECK(an == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("xi lower bounds") {
    Rng rng(71);
    const int d = 2;
    for (int trial = 0; trial < 10000; ++trial) {
        auto draw = [&]() {
            std::vector<double> c(d);
            double s;
            do {
                s = 0.0;
                for (double& v : c) {
                    v = rng.uniform();
                    s += v;
                }
            } while (s > 1.0);
            return SimplexPoint(c);
        };
        const SimplexPoint x = draw(), y = draw();
        const auto c = xi_coefficients(x, y);
        std::vector<double> t(d + 1);
        for (double& v : t) v = rng.uniform(-1.0, 1.0);
        double xi = 0.0, lb2 = 0.0;
        for (int i = 0; i <= d; ++i) {
            xi += c[i] * t[i];
            lb2 += c[i] * (1.0 - t[i]);
        }
        const double dd = distance(x, y);
        const double pi = std::acos(-1.0);
        CHECK(1.0 - xi >= (2.0 / (pi * pi)) * dd * dd - 1e-12);
        CHECK(1.0 - xi >= lb2 - 1e-12);
    }
}

TEST_CASE("reproducing kernel: normalization, reproduction, annihilation") {
    const JacobiParams kappa(std::vector<double>{0.5, 0.0, 1.0});
    const SimplexPoint x(std::vector<double>{0.3, 0.25});
    const SimplexPoint y(std::vector<double>{0.1, 0.55});
    CHECK(reproducing_kernel(x, y, 0, kappa) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(reproducing_kernel(x, y, 3, kappa) ==
          doctest::Approx(reproducing_kernel(y, x, 3, kappa)).epsilon(1e-12));

    const OrthoBasis basis = build_basis(kappa, 3);
    const Cubature cub = build_cubature(kappa, 14, 0.0);
    for (int n = 1; n <= 3; ++n) {
        for (const auto& u : basis.level(n)) {
            double acc = 0.0;
            for (std::size_t q = 0; q < cub.nodes.size(); ++q)
                acc += cub.weights[q] * reproducing_kernel(x, cub.nodes[q], n, kappa) *
                       u.evaluate(cub.nodes[q].coords());
            CHECK(acc == doctest::Approx(u.evaluate(x.coords())).epsilon(1e-8));
        }
        for (int m = 0; m <= 3; ++m) {
            if (m == n) continue;
            double acc = 0.0;
            const auto& u = basis.level(m).back();
            for (std::size_t q = 0; q < cub.nodes.size(); ++q)
                acc += cub.weights[q] * reproducing_kernel(x, cub.nodes[q], n, kappa) *
                       u.evaluate(cub.nodes[q].coords());
            CHECK(std::abs(acc) <= 1e-8);
        }
    }
}

TEST_CASE("localized kernel: collapse, direct tensor and hat-sum routes agree") {
    const JacobiParams kappa(std::vector<double>{1.0, 0.5, 0.0});
    const auto xs = quasi_random_points(2, 3, 5, 0.02);
    const auto ys = quasi_random_points(2, 3, 6, 0.02);
    const CutoffFunction cutoff;
    for (int n : {2, 4}) {
        const KernelConfig cfg(n, kappa);
        const KernelEvaluator eval(cfg);
        for (const auto& x : xs)
            for (const auto& y : ys) {
                const double v = eval(x, y);
                CHECK(v == doctest::Approx(localized_kernel_direct(x, y, cfg)).epsilon(1e-10));
                double hat = 0.0;
                for (int j = 0; j <= 2 * n; ++j) {
                    const double w = cutoff(static_cast<double>(j) / n);
                    if (w > 0.0) hat += w * reproducing_kernel(x, y, j, kappa);
                }
                CHECK(std::abs(v - hat) <= 1e-8 * (1.0 + std::abs(v)));
                CHECK(v == doctest::Approx(eval(y, x)).epsilon(1e-12));
            }
    }
}

TEST_CASE("localized kernel reproduces polynomials up to degree n") {
    const JacobiParams kappa = JacobiParams::zero(2);
    const int n = 4;
    const KernelEvaluator eval(KernelConfig(n, kappa));
    const Cubature cub = build_cubature(kappa, 3 * n + 4, 0.0);
    Rng rng(77);
    const Polynomial f = suites::random_polynomial(2, n, rng);
    for (const auto& x : quasi_random_points(2, 3, 8, 0.05)) {
        double acc = 0.0;
        for (std::size_t q = 0; q < cub.nodes.size(); ++q)
            acc += cub.weights[q] * eval(x, cub.nodes[q]) *
                   f.evaluate(cub.nodes[q].coords());
        CHECK(acc == doctest::Approx(f.evaluate(x.coords())).epsilon(1e-8));
    }
}

TEST_CASE("localized kernel is a polynomial of degree <= 2n in x") {
    const JacobiParams kappa = JacobiParams::zero(2);
    const int n = 3;
    const KernelEvaluator eval(KernelConfig(n, kappa));
    const SimplexPoint y0(std::vector<double>{0.4, 0.2});
    const OrthoBasis basis = build_basis(kappa, 2 * n);
    const Cubature cub = build_cubature(kappa, 4 * n + 4, 0.0);
    // project x -> L(x, y0) onto Pi_2n and compare pointwise
    std::vector<double> coeffs;
    Polynomial proj(2, 2 * n);
    for (int m = 0; m <= 2 * n; ++m)
        for (const auto& u : basis.level(m)) {
            double c = 0.0;
            for (std::size_t q = 0; q < cub.nodes.size(); ++q)
                c += cub.weights[q] * eval(cub.nodes[q], y0) *
                     u.evaluate(cub.nodes[q].coords());
            proj = proj + c * u;
        }
    for (const auto& x : quasi_random_points(2, 10, 12, 0.0))
        CHECK(eval(x, y0) == doctest::Approx(proj.evaluate(x.coords())).epsilon(1e-7));
}

TEST_CASE("kernel derivative: finite differences and symmetry") {
    const JacobiParams kappa(std::vector<double>{0.5, 1.0, 0.0});
    const int n = 4;
    const KernelEvaluator eval(KernelConfig(n, kappa));
    Rng rng(83);
    const auto xs = quasi_random_points(2, 5, 21, 0.08);
    const auto ys = quasi_random_points(2, 5, 22, 0.02);
    const double h = 1e-5;
    int checked = 0;
    for (const auto& x : xs)
        for (const auto& y : ys) {
            // d_{1,2}: move x along e1 - e2
            {
                const SimplexPoint xp(std::vector<double>{x[0] + h, x[1] - h});
                const SimplexPoint xm(std::vector<double>{x[0] - h, x[1] + h});
                const double fd = (eval(xp, y) - eval(xm, y)) / (2 * h);
                const double an = eval.derivative(x, y, 1, 2);
                CHECK(std::abs(an - fd) <= 1e-5 * (1.0 + std::abs(an)));
            }
            // d_{1,3} = d/dx_1
            {
                const SimplexPoint xp(std::vector<double>{x[0] + h, x[1]});
                const SimplexPoint xm(std::vector<double>{x[0] - h, x[1]});
                const double fd = (eval(xp, y) - eval(xm, y)) / (2 * h);
                const double an = eval.derivative(x, y, 1, 3);
                CHECK(std::abs(an - fd) <= 1e-5 * (1.0 + std::abs(an)));
            }
            ++checked;
        }
    CHECK(checked >= 25);

    // exchangeable kappa, both points on the diagonal: d_{1,2} L = 0
    const JacobiParams ksym(std::vector<double>{0.7, 0.7, 0.2});
    const KernelEvaluator esym(KernelConfig(3, ksym));
    const SimplexPoint xd(std::vector<double>{0.3, 0.3});
    const SimplexPoint yd(std::vector<double>{0.15, 0.15});
    CHECK(std::abs(esym.derivative(xd, yd, 1, 2)) <= 1e-10);

    CHECK_THROWS_AS(eval.derivative(SimplexPoint(std::vector<double>{0.0, 0.3}),
                                    ys.front(), 1, 2),
                    std::invalid_argument);
}

TEST_CASE("derivative of the kernel integral reproduces derivatives") {
    const JacobiParams kappa = JacobiParams::zero(2);
    const int n = 3;
    const KernelEvaluator eval(KernelConfig(n, kappa));
    const Cubature cub = build_cubature(kappa, 3 * n + 4, 0.0);
    Rng rng(91);
    const Polynomial f = suites::random_polynomial(2, n, rng);
    for (const auto& x : quasi_random_points(2, 3, 31, 0.1)) {
        for (const auto [i, j] : {std::pair{1, 2}, std::pair{1, 3}}) {
            double acc = 0.0;
            for (std::size_t q = 0; q < cub.nodes.size(); ++q)
                acc += cub.weights[q] * eval.derivative(x, cub.nodes[q], i, j) *
                       f.evaluate(cub.nodes[q].coords());
            const double expected = f.diff_pair(i, j).evaluate(x.coords());
            CHECK(std::abs(acc - expected) <= 1e-7 * (1.0 + std::abs(expected)));
        }
    }
}

TEST_CASE("wkn values and ball-measure comparability") {
    const JacobiParams k0 = JacobiParams::zero(2);
    const SimplexPoint x(std::vector<double>{0.25, 0.25});
    CHECK(wkn(x, 10, k0) == doctest::Approx(0.26 * std::sqrt(0.51)).epsilon(1e-12));

    // kappa = 0, fixed interior x: W(n;x) tends to prod sqrt(bary)
    double limit = std::sqrt(0.25 * 0.25 * 0.5);
    CHECK(wkn(x, 4000, k0) == doctest::Approx(limit).epsilon(1e-4));

    // comparability band against measured ball masses
    DoublingWeightSpec w = DoublingWeightSpec::jacobi(JacobiParams({0.5, 0.0, 1.0}));
    const JacobiParams& kappa = *w.kappa();
    double lo = 1e300, hi = 0.0;
    const auto xs = quasi_random_points(2, 20, 19);
    for (int n : {8, 16, 32}) {
        for (const auto& p : xs) {
            const double meas = ball_measure(w, p, 1.0 / n, 16384);
            const double pred = std::pow(static_cast<double>(n), -2.0) * wkn(p, n, kappa);
            const double ratio = meas / pred;
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    }
    CHECK(hi / lo <= 25.0);  // fixed two-sided band across the sweep
    CHECK(lo > 0.0);
}

TEST_CASE("kernel mass stays bounded for n up to 32") {
    const JacobiParams kappa = JacobiParams::zero(2);
    const SimplexPoint xs[] = {SimplexPoint(std::vector<double>{1.0 / 3, 1.0 / 3}),
                               SimplexPoint(std::vector<double>{0.7, 0.05})};
    double lo = 1e300, hi = 0.0;
    for (int n : {8, 16, 32}) {
        const KernelEvaluator eval(KernelConfig(n, kappa));
        for (const auto& x : xs) {
            const double mass = kernel_mass(x, eval, 2 * n + 16);
            CHECK(std::isfinite(mass));
            CHECK(mass < 100.0);
            lo = std::min(lo, mass);
            hi = std::max(hi, mass);
        }
    }
    CHECK(hi / lo <= 4.0);
}
