#include "sbern/forms.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "sbern/jacobi1d.hpp"
#include "sbern/quadrature.hpp"
#include "sbern/spectral.hpp"

namespace sbern {

namespace {

// One summand of a decomposition: scalar factor at the node times the two
// derivative images, integrated against a plain / radial / axis rule.
struct TermPlan {
    enum class Rule { Plain, Radial, Axis } rule = Rule::Plain;
    int ell = 0;  // axis rule only
    Polynomial factor;
    std::function<Polynomial(const Polynomial&)> op;
};

Polynomial euler_of(const Polynomial& f) { return f.euler(); }

TermPlan plan_for(const FormKind& k, int d) {
    using Tag = FormKind::Tag;
    const Polynomial slack = Polynomial::slack(d);
    switch (k.tag) {
        case Tag::DiagTerm:
            return {TermPlan::Rule::Plain, 0, Polynomial::coordinate(d, k.i) * slack,
                    [i = k.i](const Polynomial& f) { return f.partial(i); }};
        case Tag::PairTerm:
            return {TermPlan::Rule::Plain, 0,
                    Polynomial::coordinate(d, k.i) * Polynomial::coordinate(d, k.j),
                    [i = k.i, j = k.j](const Polynomial& f) { return f.diff_pair(i, j); }};
        case Tag::RadialTerm:
            return {TermPlan::Rule::Radial, 0, slack, euler_of};
        case Tag::RadialPairTerm:
            return {TermPlan::Rule::Radial, 0,
                    Polynomial::coordinate(d, k.i) * Polynomial::coordinate(d, k.j),
                    [i = k.i, j = k.j](const Polynomial& f) { return f.diff_pair(i, j); }};
        case Tag::AxisMainTerm:
            return {TermPlan::Rule::Axis, k.ell, Polynomial::coordinate(d, k.ell),
                    [ell = k.ell](const Polynomial& f) { return f.euler() - f.partial(ell); }};
        case Tag::AxisDiagTerm:
            return {TermPlan::Rule::Axis, k.ell, Polynomial::coordinate(d, k.i) * slack,
                    [i = k.i](const Polynomial& f) { return f.partial(i); }};
        case Tag::AxisPairTerm:
            return {TermPlan::Rule::Axis, k.ell,
                    Polynomial::coordinate(d, k.i) * Polynomial::coordinate(d, k.j),
                    [i = k.i, j = k.j](const Polynomial& f) { return f.diff_pair(i, j); }};
        default:
            throw std::invalid_argument("plan_for: full sets must be expanded first");
    }
}

Cubature rule_for(const TermPlan& plan, const JacobiParams& kappa, int degree) {
    switch (plan.rule) {
        case TermPlan::Rule::Plain:
            return build_cubature(kappa, degree, 0.0);
        case TermPlan::Rule::Radial:
            kappa.require_nonnegative();
            return build_cubature(kappa, degree, -1.0);
        case TermPlan::Rule::Axis:
            kappa.require_nonnegative();
            return build_axis_cubature(kappa, degree, plan.ell);
    }
    throw std::logic_error("rule_for: unreachable");
}

}  // namespace

std::vector<FormKind> expand_form_set(const FormKind& kind, int d) {
    using Tag = FormKind::Tag;
    std::vector<FormKind> out;
    switch (kind.tag) {
        case Tag::Classical:
            for (int i = 1; i <= d; ++i) out.push_back(FormKind::diag_term(i));
            for (int i = 1; i <= d; ++i)
                for (int j = i + 1; j <= d; ++j) out.push_back(FormKind::pair_term(i, j));
            break;
        case Tag::Radial:
            out.push_back(FormKind::radial_term());
            for (int i = 1; i <= d; ++i)
                for (int j = i + 1; j <= d; ++j) out.push_back(FormKind::radial_pair_term(i, j));
            break;
        case Tag::Axis:
            out.push_back(FormKind::axis_main_term(kind.ell));
            for (int i = 1; i <= d; ++i)
                if (i != kind.ell) out.push_back(FormKind::axis_diag_term(kind.ell, i));
            for (int i = 1; i <= d; ++i)
                for (int j = i + 1; j <= d; ++j)
                    if (i != kind.ell && j != kind.ell)
                        out.push_back(FormKind::axis_pair_term(kind.ell, i, j));
            break;
        default:
            out.push_back(kind);
    }
    return out;
}

double form_value(const FormKind& kind, const Polynomial& f, const Polynomial& g,
                  const JacobiParams& kappa) {
    const int d = f.dim();
    if (g.dim() != d || kappa.dim() != d) throw std::invalid_argument("form_value: dim mismatch");
    double total = 0.0;
    for (const FormKind& term : expand_form_set(kind, d)) {
        const TermPlan plan = plan_for(term, d);
        const Polynomial df = plan.op(f);
        const Polynomial dg = plan.op(g);
        const Polynomial integrand = plan.factor * df * dg;
        const Cubature rule = rule_for(plan, kappa, std::max(0, integrand.degree_bound()));
        total += rule.integrate(integrand);
    }
    return total;
}

namespace {

// (1/W) d_i (x_i(1-|x|) W d_i f) at an interior point, product rule expanded.
double diag_pointwise(const Polynomial& f, const JacobiParams& kappa, int i,
                      const SimplexPoint& x) {
    const int d = f.dim();
    const Polynomial fi = f.partial(i);
    const Polynomial gi = (Polynomial::coordinate(d, i) * Polynomial::slack(d)) * fi;
    const double logder = kappa.kappa(i) / x.bary(i) - kappa.kappa(d + 1) / x.slack();
    return gi.partial(i).evaluate(x.coords()) + gi.evaluate(x.coords()) * logder;
}

// (1/W) d_ij (x_i x_j W d_ij f) at an interior point.
double pair_pointwise(const Polynomial& f, const JacobiParams& kappa, int i, int j,
                      const SimplexPoint& x) {
    const int d = f.dim();
    const Polynomial fij = f.diff_pair(i, j);
    const Polynomial gij =
        (Polynomial::coordinate(d, i) * Polynomial::coordinate(d, j)) * fij;
    const double logder = kappa.kappa(i) / x.bary(i) - kappa.kappa(j) / x.bary(j);
    return (gij.partial(i) - gij.partial(j)).evaluate(x.coords()) +
           gij.evaluate(x.coords()) * logder;
}

}  // namespace

double verify_operator_identity(OperatorIdentity which, const Polynomial& f,
                                const JacobiParams& kappa,
                                const std::vector<SimplexPoint>& samples, int ell) {
    const int d = f.dim();
    for (const auto& x : samples) {
        for (int i = 1; i <= d + 1; ++i)
            if (x.bary(i) < 0.049)
                throw std::invalid_argument("verify_operator_identity: sample touches boundary");
    }
    const Polynomial lhs_poly = apply_spectral(f, kappa);
    double lhs_scale = 0.0;
    std::vector<double> lhs(samples.size());
    for (std::size_t s = 0; s < samples.size(); ++s) {
        lhs[s] = lhs_poly.evaluate(samples[s].coords());
        lhs_scale = std::max(lhs_scale, std::abs(lhs[s]));
    }

    double worst = 0.0;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const SimplexPoint& x = samples[s];
        double rhs = 0.0;
        if (which == OperatorIdentity::SelfAdj) {
            for (int i = 1; i <= d; ++i) rhs += diag_pointwise(f, kappa, i, x);
            for (int i = 1; i <= d; ++i)
                for (int j = i + 1; j <= d; ++j) rhs += pair_pointwise(f, kappa, i, j, x);
        } else if (which == OperatorIdentity::CDk2) {
            double xs = 0.0, kprime = 0.0;
            for (int i = 1; i <= d; ++i) {
                xs += x.bary(i);
                kprime += kappa.kappa(i);
            }
            const Polynomial e = f.euler();
            const double ev = e.evaluate(x.coords());
            const double eev = e.euler().evaluate(x.coords());
            rhs += ((1.0 - xs) / xs) * (eev + ev * (d - 1 + kprime)) -
                   (kappa.kappa(d + 1) + 1.0) * ev;
            for (int i = 1; i <= d; ++i)
                for (int j = i + 1; j <= d; ++j) rhs += pair_pointwise(f, kappa, i, j, x) / xs;
        } else {  // Cor23
            if (ell < 1 || ell > d) throw std::out_of_range("verify_operator_identity: ell");
            const double xl = x.bary(ell);
            const Polynomial sp = f.euler() - f.partial(ell);
            const double sv = sp.evaluate(x.coords());
            const double tsv = (sp.euler() - sp.partial(ell)).evaluate(x.coords());
            rhs += (xl / (1.0 - xl)) * (tsv + sv * (d - 1 + kappa.total() - kappa.kappa(ell))) -
                   (1.0 + kappa.kappa(ell)) * sv;
            for (int i = 1; i <= d; ++i)
                if (i != ell) rhs += diag_pointwise(f, kappa, i, x) / (1.0 - xl);
            for (int i = 1; i <= d; ++i)
                for (int j = i + 1; j <= d; ++j)
                    if (i != ell && j != ell)
                        rhs += pair_pointwise(f, kappa, i, j, x) / (1.0 - xl);
        }
        worst = std::max(worst, std::abs(rhs - lhs[s]));
    }
    return worst / (1.0 + lhs_scale);
}

double verify_integral_identity(IntegralIdentity which, const Polynomial& f, const Polynomial& g,
                                const JacobiParams& kappa, int ell) {
    const double lhs = -inner_product(apply_spectral(f, kappa), g, kappa);
    FormKind set = FormKind::classical();
    if (which == IntegralIdentity::SelfAdj2) set = FormKind::radial();
    if (which == IntegralIdentity::SelfAdj3) set = FormKind::axis(ell);
    const double rhs = form_value(set, f, g, kappa);
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

SharpConstant sharp_constant(const std::vector<FormKind>& kinds, int n, const JacobiParams& kappa,
                             const OrthoBasis* prebuilt) {
    const int d = kappa.dim();
    if (n < 0 || n > 20) throw std::invalid_argument("sharp_constant: n out of range");
    OrthoBasis local = prebuilt && prebuilt->max_degree() >= n
                           ? *prebuilt
                           : build_basis(kappa, n);
    const std::vector<Polynomial> basis = local.flattened(n);
    const int nb = static_cast<int>(basis.size());

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nb, nb);
    for (const FormKind& kind : kinds) {
        for (const FormKind& term : expand_form_set(kind, d)) {
            const TermPlan plan = plan_for(term, d);
            const Cubature rule = rule_for(plan, kappa, 2 * n + 2);
            const std::size_t m = rule.nodes.size();
            Eigen::MatrixXd vals(m, nb);
            for (int k = 0; k < nb; ++k) {
                const Polynomial dk = plan.op(basis[k]);
                for (std::size_t q = 0; q < m; ++q)
                    vals(q, k) = dk.evaluate(rule.nodes[q].coords());
            }
            Eigen::VectorXd diag(m);
            for (std::size_t q = 0; q < m; ++q)
                diag(q) = rule.weights[q] * plan.factor.evaluate(rule.nodes[q].coords());
            a.noalias() += vals.transpose() * diag.asDiagonal() * vals;
        }
    }
    a = 0.5 * (a + a.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success) throw std::runtime_error("sharp_constant: eigen failure");
    const double lam = es.eigenvalues()(nb - 1);
    SharpConstant out{lam, Polynomial(d, std::max(n, 0)), 0, 0.0};
    const Eigen::VectorXd v = es.eigenvectors().col(nb - 1);
    for (int k = 0; k < nb; ++k) out.argmax = out.argmax + v(k) * basis[k];
    for (int k = 0; k < nb; ++k)
        if (std::abs(es.eigenvalues()(k) - lam) <= 1e-8 * std::max(1.0, std::abs(lam)))
            ++out.multiplicity;
    // coordinates of the argmax on levels below n (basis is orthonormal)
    const int below = nb - static_cast<int>(local.level(n).size());
    out.proj_below_norm = v.head(below).norm();
    return out;
}

namespace {

// The extremal quotients collapse to one-variable Jacobi integrals. For
// f = P_n^{(a,b)} composed with 2x_1-1 (or 1-2|x|), every listed form set
// reduces pointwise to 4 u(1-u) P_n'(t)^2 with u the relevant barycentric
// variable and t its affine image, and the marginal of W_kappa in u is the
// matching Beta weight, leaving
//   int (1-t^2) P_n'(t)^2 w_{a,b} dt / int P_n(t)^2 w_{a,b} dt.
// Evaluating via the recurrence sidesteps the ~1e6 monomial coefficients of
// the expanded extremals, whose products double precision cannot cancel.
double jacobi_rayleigh_1d(int n, double a, double b) {
    const GaussRule rule = gauss_jacobi(n + 2, a, b);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = rule.nodes[i];
        const double v = jacobi_eval(n, a, b, t);
        const double dv = jacobi_eval(n, a, b, t, 1);
        den += rule.weights[i] * v * v;
        num += rule.weights[i] * (1.0 - t * t) * dv * dv;
    }
    return num / den;
}

}  // namespace

std::vector<EqualityCaseRow> equality_case_report(int n, const JacobiParams& kappa) {
    const int d = kappa.dim();
    const double lam = kappa.lambda(n);
    const double a_p = kappa.total() - kappa.kappa(1) + d - 1;
    const double b_p = kappa.kappa(1);
    const double a_r = kappa.total() - kappa.kappa(d + 1) + d - 1;
    const double b_r = kappa.kappa(d + 1);
    const double q_p = jacobi_rayleigh_1d(n, a_p, b_p);
    const double q_r = jacobi_rayleigh_1d(n, a_r, b_r);

    std::vector<EqualityCaseRow> rows;
    auto add = [&](std::string label, double q) {
        rows.push_back({std::move(label), q, lam, std::abs(q - lam) / std::max(1.0, lam)});
    };
    add("diag-sum(R_e1)", q_r);
    add("axis1-classical(P_e1)", q_p);
    add("radial-main(R_e1)", q_r);
    add("axis1-main(P_e1)", q_p);
    return rows;
}

}  // namespace sbern
