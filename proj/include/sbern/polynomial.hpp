#pragma once

#include <cmath>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "sbern/multi_index.hpp"
#include "sbern/util.hpp"

namespace sbern {

/// Shared monomial tables keyed by (dim, max_degree).
std::shared_ptr<const MonomialBasis> monomial_table(int dim, int max_degree);

/// Dense multivariate polynomial over graded-lex monomials of total degree
/// <= degree_bound. Immutable in spirit: every operation returns a new value.
class Polynomial {
  public:
    Polynomial(int dim, int degree_bound)
        : table_(monomial_table(dim, degree_bound)), coeffs_(table_->size(), 0.0) {}

    static Polynomial constant(int dim, double c) {
        Polynomial p(dim, 0);
        p.coeffs_[0] = c;
        return p;
    }

    static Polynomial monomial(int dim, int degree_bound, const std::vector<int>& exponents,
                               double c = 1.0) {
        Polynomial p(dim, degree_bound);
        p.coeffs_[p.table_->index_of(exponents)] = c;
        return p;
    }

    /// x_i as a polynomial, axis in 1..d.
    static Polynomial coordinate(int dim, int axis) {
        if (axis < 1 || axis > dim) throw std::out_of_range("coordinate: axis out of range");
        std::vector<int> e(dim, 0);
        e[axis - 1] = 1;
        return monomial(dim, 1, e);
    }

    /// 1 - x_1 - ... - x_d.
    static Polynomial slack(int dim) {
        Polynomial p = constant(dim, 1.0);
        for (int i = 1; i <= dim; ++i) p = p - coordinate(dim, i);
        return p;
    }

    int dim() const { return table_->dim(); }
    int degree_bound() const { return table_->max_degree(); }
    const MonomialBasis& table() const { return *table_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double& coeff_at(const std::vector<int>& e) { return coeffs_[table_->index_of(e)]; }
    double coeff_at(const std::vector<int>& e) const { return coeffs_[table_->index_of(e)]; }

    /// Actual degree (largest total degree carrying a nonzero coefficient);
    /// -1 for the zero polynomial.
    int degree() const {
        int deg = -1;
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0.0 && table_->degree(i) > deg) deg = table_->degree(i);
        return deg;
    }

    bool is_zero(double tol = 0.0) const {
        for (double c : coeffs_)
            if (std::abs(c) > tol) return false;
        return true;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (double c : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

    /// Evaluate at x (size d); compensated pairwise summation over terms.
    double evaluate(std::span<const double> x) const {
        if (static_cast<int>(x.size()) != dim())
            throw std::invalid_argument("Polynomial::evaluate: dimension mismatch");
        std::vector<double> xv(x.begin(), x.end());
        std::vector<double> mono;
        table_->monomial_values(xv, mono);
        std::vector<double> terms(coeffs_.size());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) terms[i] = coeffs_[i] * mono[i];
        return pairwise_sum(terms);
    }

    Polynomial operator+(const Polynomial& o) const { return combined(o, 1.0); }
    Polynomial operator-(const Polynomial& o) const { return combined(o, -1.0); }
    Polynomial operator*(double s) const {
        Polynomial r = *this;
        for (double& c : r.coeffs_) c *= s;
        return r;
    }
    friend Polynomial operator*(double s, const Polynomial& p) { return p * s; }

    Polynomial operator*(const Polynomial& o) const {
        if (o.dim() != dim()) throw std::invalid_argument("Polynomial: dimension mismatch");
        Polynomial r(dim(), degree_bound() + o.degree_bound());
        const auto& tr = *r.table_;
        std::vector<int> e(dim());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0.0) continue;
            const auto& ea = table_->exponents(i);
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
                if (o.coeffs_[j] == 0.0) continue;
                const auto& eb = o.table_->exponents(j);
                for (int k = 0; k < dim(); ++k) e[k] = ea[k] + eb[k];
                r.coeffs_[tr.index_of(e)] += coeffs_[i] * o.coeffs_[j];
            }
        }
        return r;
    }

    /// d/dx_i, axis in 1..d; degree drops by one (or yields zero).
    Polynomial partial(int axis) const {
        if (axis < 1 || axis > dim()) throw std::out_of_range("partial: axis out of range");
        Polynomial r(dim(), std::max(0, degree_bound() - 1));
        const int a = axis - 1;
        std::vector<int> e(dim());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            const auto& ea = table_->exponents(i);
            if (coeffs_[i] == 0.0 || ea[a] == 0) continue;
            e = ea;
            e[a] -= 1;
            r.coeffs_[r.table_->index_of(e)] += coeffs_[i] * ea[a];
        }
        return r;
    }

    /// Difference derivative d_i - d_j with j in 1..d+1; j = d+1 means plain d_i.
    Polynomial diff_pair(int i, int j) const {
        if (i == j) throw std::invalid_argument("diff_pair: i and j must differ");
        if (i < 1 || i > dim() || j < 1 || j > dim() + 1)
            throw std::out_of_range("diff_pair: axis out of range");
        if (j == dim() + 1) return partial(i);
        return partial(i) - partial(j);
    }

    /// Euler operator sum_i x_i d_i; scales the homogeneous degree-m part by m.
    Polynomial euler() const {
        Polynomial r(dim(), degree_bound());
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            r.coeffs_[i] = coeffs_[i] * table_->degree(i);
        return r;
    }

    /// Re-embed into a table with a (not smaller) degree bound.
    Polynomial with_degree_bound(int bound) const {
        if (bound == degree_bound()) return *this;
        Polynomial r(dim(), bound);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0.0) continue;
            if (table_->degree(i) > bound)
                throw std::invalid_argument("with_degree_bound: truncation of nonzero term");
            r.coeffs_[r.table_->index_of(table_->exponents(i))] = coeffs_[i];
        }
        return r;
    }

  private:
    Polynomial combined(const Polynomial& o, double sign) const {
        if (o.dim() != dim()) throw std::invalid_argument("Polynomial: dimension mismatch");
        const int bound = std::max(degree_bound(), o.degree_bound());
        Polynomial r = with_degree_bound(bound);
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
            if (o.coeffs_[j] == 0.0) continue;
            r.coeffs_[r.table_->index_of(o.table_->exponents(j))] += sign * o.coeffs_[j];
        }
        return r;
    }

    std::shared_ptr<const MonomialBasis> table_;
    std::vector<double> coeffs_;
};

}  // namespace sbern
