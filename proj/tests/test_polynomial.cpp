#include <doctest.h>

#include <cmath>

#include "sbern/polynomial.hpp"
#include "sbern/spectral.hpp"
#include "sbern/suites.hpp"

using namespace sbern;

namespace {

Polynomial linear_3x1_minus_1() {
    // 3 x1 - 1 (the degree-1 extremal polynomial for d = 2, kappa = 0)
    Polynomial f(2, 1);
    f.coeff_at({0, 0}) = -1.0;
    f.coeff_at({1, 0}) = 3.0;
    return f;
}

}  // namespace

TEST_CASE("evaluate: spec examples") {
    CHECK(Polynomial::constant(2, 1.0).evaluate(std::vector<double>{0.3, 0.2}) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(linear_3x1_minus_1().evaluate(std::vector<double>{1.0 / 3.0, 0.0}) ==
          doctest::Approx(0.0).epsilon(1e-14));
    Polynomial xy = Polynomial::monomial(2, 2, {1, 1});
    CHECK(xy.evaluate(std::vector<double>{0.5, 0.5}) == doctest::Approx(0.25));
    CHECK_THROWS_AS(xy.evaluate(std::vector<double>{0.5}), std::invalid_argument);
}

TEST_CASE("partial derivatives") {
    Polynomial x1sq = Polynomial::monomial(2, 2, {2, 0});
    Polynomial d1 = x1sq.partial(1);
    CHECK(d1.coeff_at({1, 0}) == doctest::Approx(2.0));
    CHECK(d1.degree() == 1);

    CHECK(linear_3x1_minus_1().partial(2).is_zero());

    Polynomial xy = Polynomial::monomial(2, 2, {1, 1});
    Polynomial d = xy.partial(1);
    CHECK(d.coeff_at({0, 1}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(xy.partial(3), std::out_of_range);
    CHECK_THROWS_AS(xy.partial(0), std::out_of_range);
}

TEST_CASE("diff_pair") {
    Polynomial x1 = Polynomial::coordinate(2, 1);
    Polynomial x2 = Polynomial::coordinate(2, 2);
    CHECK((x1 + x2).diff_pair(1, 2).is_zero());
    Polynomial c = linear_3x1_minus_1().diff_pair(1, 2);
    CHECK(c.degree() == 0);
    CHECK(c.coeff_at({0, 0}) == doctest::Approx(3.0));
    Polynomial e = x1.diff_pair(1, 3);  // j = d+1 means plain d_1
    CHECK(e.coeff_at({0, 0}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(x1.diff_pair(2, 2), std::invalid_argument);
}

TEST_CASE("euler operator") {
    CHECK(Polynomial::constant(2, 5.0).euler().is_zero());
    Polynomial xy = Polynomial::monomial(2, 2, {1, 1});
    Polynomial e = xy.euler();
    CHECK(e.coeff_at({1, 1}) == doctest::Approx(2.0));
    Polynomial lin = linear_3x1_minus_1().euler();
    CHECK(lin.coeff_at({1, 0}) == doctest::Approx(3.0));
    CHECK(lin.coeff_at({0, 0}) == doctest::Approx(0.0));

    // homogeneous degree-m monomials are scaled by m
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int a = static_cast<int>(rng.next_u64() % 4), b = static_cast<int>(rng.next_u64() % 4);
        Polynomial m = Polynomial::monomial(2, a + b, {a, b});
        CHECK(m.euler().coeff_at({a, b}) == doctest::Approx(static_cast<double>(a + b)));
    }
}

TEST_CASE("apply_spectral: eigen examples at kappa = 0, d = 2") {
    const JacobiParams kappa = JacobiParams::zero(2);
    CHECK(apply_spectral(Polynomial::constant(2, 1.0), kappa).is_zero());

    // D(3x1 - 1) = -3 (3x1 - 1), lambda_1 = 1 (1 + 0 + 2) = 3
    Polynomial f = linear_3x1_minus_1();
    Polynomial residual = apply_spectral(f, kappa) + 3.0 * f;
    CHECK(residual.max_abs_coeff() <= 1e-13);

    // R_{e1} for n = 1: 2 - 3x1 - 3x2
    Polynomial r(2, 1);
    r.coeff_at({0, 0}) = 2.0;
    r.coeff_at({1, 0}) = -3.0;
    r.coeff_at({0, 1}) = -3.0;
    CHECK((apply_spectral(r, kappa) + 3.0 * r).max_abs_coeff() <= 1e-13);
}

TEST_CASE("linearity of the operators") {
    Rng rng(5);
    const JacobiParams kappa(std::vector<double>{0.5, 1.5, 0.0, 2.0});
    for (int trial = 0; trial < 5; ++trial) {
        const Polynomial f = suites::random_polynomial(3, 5, rng);
        const Polynomial g = suites::random_polynomial(3, 5, rng);
        const double a = rng.uniform(-2.0, 2.0), b = rng.uniform(-2.0, 2.0);
        const Polynomial combo = a * f + b * g;
        auto check_linear = [&](auto&& op) {
            const Polynomial lhs = op(combo);
            const Polynomial rhs = a * op(f) + b * op(g);
            CHECK((lhs - rhs).max_abs_coeff() <= 1e-12 * (1.0 + rhs.max_abs_coeff()));
        };
        check_linear([](const Polynomial& p) { return p.partial(1); });
        check_linear([](const Polynomial& p) { return p.diff_pair(1, 3); });
        check_linear([](const Polynomial& p) { return p.euler(); });
        check_linear([&](const Polynomial& p) { return apply_spectral(p, kappa); });
    }
}

TEST_CASE("self-adjoint expansion equals the spectral operator coefficient-wise") {
    Rng rng(7);
    // polynomial for every kappa >= 0, not only kappa >= 1
    for (const auto& ks : {std::vector<double>{1.0, 1.0, 1.0}, std::vector<double>{2.0, 1.5, 3.0},
                           std::vector<double>{0.0, 0.5, 0.25}}) {
        const JacobiParams kappa(ks);
        for (int trial = 0; trial < 4; ++trial) {
            const Polynomial f = suites::random_polynomial(2, 6, rng);
            const Polynomial lhs = apply_spectral(f, kappa);
            const Polynomial rhs = self_adjoint_form_rhs(f, kappa);
            CHECK((lhs - rhs).max_abs_coeff() <= 1e-10 * (1.0 + lhs.max_abs_coeff()));
        }
    }
}

TEST_CASE("polynomial bookkeeping") {
    Polynomial f(3, 4);
    CHECK(f.coeffs().size() == 35);  // binom(4+3,3)
    CHECK(f.degree() == -1);
    f.coeff_at({1, 2, 1}) = 2.5;
    CHECK(f.degree() == 4);
    CHECK_THROWS_AS(f.with_degree_bound(3), std::invalid_argument);
    const Polynomial g = f.with_degree_bound(6);
    CHECK(g.coeff_at({1, 2, 1}) == doctest::Approx(2.5));
}
