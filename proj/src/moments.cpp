#include "sbern/moments.hpp"

#include <cmath>
#include <stdexcept>

namespace sbern {

double dirichlet_moment(const std::vector<int>& exponents, const JacobiParams& kappa) {
    if (static_cast<int>(exponents.size()) != kappa.dim() + 1)
        throw std::invalid_argument("dirichlet_moment: need d+1 exponents (slack included)");
    int total = 0;
    for (int a : exponents) {
        if (a < 0) throw std::invalid_argument("dirichlet_moment: negative exponent");
        total += a;
    }
    if (total > 300) throw std::invalid_argument("dirichlet_moment: |alpha| > 300 (gamma overflow)");
    const auto& k = kappa.kappa();
    double lg = std::lgamma(kappa.total() + kappa.dim() + 1) -
                std::lgamma(kappa.total() + total + kappa.dim() + 1);
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (!(k[i] + exponents[i] > -1.0))
            throw std::invalid_argument("dirichlet_moment: alpha_i + kappa_i must exceed -1");
        lg += std::lgamma(k[i] + exponents[i] + 1.0) - std::lgamma(k[i] + 1.0);
    }
    return std::exp(lg);
}

MomentTable::MomentTable(const JacobiParams& kappa, int dim, int max_degree)
    : dim_(dim), max_degree_(max_degree), table_(monomial_table(dim, max_degree)) {
    if (kappa.dim() != dim) throw std::invalid_argument("MomentTable: dimension mismatch");
    values_.resize(table_->size());
    std::vector<int> ext(dim + 1, 0);
    for (std::size_t i = 0; i < table_->size(); ++i) {
        const auto& e = table_->exponents(i);
        for (int a = 0; a < dim; ++a) ext[a] = e[a];
        values_[i] = dirichlet_moment(ext, kappa);
    }
}

double MomentTable::integrate(const Polynomial& f) const {
    if (f.dim() != dim_) throw std::invalid_argument("MomentTable::integrate: dimension mismatch");
    if (f.degree_bound() > max_degree_ && f.degree() > max_degree_)
        throw std::invalid_argument("MomentTable::integrate: degree exceeds table");
    const auto& tf = f.table();
    double acc = 0.0;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        const double c = f.coeffs()[i];
        if (c == 0.0) continue;
        acc += c * values_[table_->index_of(tf.exponents(i))];
    }
    return acc;
}

double inner_product(const Polynomial& f, const Polynomial& g, const JacobiParams& kappa) {
    const Polynomial prod = f * g;
    MomentTable table(kappa, f.dim(), prod.degree_bound());
    return table.integrate(prod);
}

double inner_product_hp(const Polynomial& f, const Polynomial& g, const JacobiParams& kappa) {
    const int d = f.dim();
    if (g.dim() != d || kappa.dim() != d)
        throw std::invalid_argument("inner_product_hp: dimension mismatch");
    const auto big = monomial_table(d, f.degree_bound() + g.degree_bound());
    const auto& k = kappa.kappa();
    std::vector<long double> moments(big->size());
    for (std::size_t i = 0; i < big->size(); ++i) {
        const auto& mono = big->exponents(i);
        long double lg = lgammal(static_cast<long double>(kappa.total()) + d + 1);
        long double total = 0;
        for (int a : mono) total += a;
        lg -= lgammal(static_cast<long double>(kappa.total()) + total + d + 1);
        for (std::size_t c = 0; c < k.size(); ++c) {
            const long double ai = (c < mono.size()) ? mono[c] : 0;
            lg += lgammal(static_cast<long double>(k[c]) + ai + 1) -
                  lgammal(static_cast<long double>(k[c]) + 1);
        }
        moments[i] = expl(lg);
    }
    std::vector<long double> prod(big->size(), 0.0L);
    const auto& tf = f.table();
    const auto& tg = g.table();
    std::vector<int> e(d);
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        if (f.coeffs()[i] == 0.0) continue;
        const auto& ei = tf.exponents(i);
        for (std::size_t j = 0; j < g.coeffs().size(); ++j) {
            if (g.coeffs()[j] == 0.0) continue;
            const auto& ej = tg.exponents(j);
            for (int a = 0; a < d; ++a) e[a] = ei[a] + ej[a];
            prod[big->index_of(e)] +=
                static_cast<long double>(f.coeffs()[i]) * g.coeffs()[j];
        }
    }
    long double acc = 0.0L;
    for (std::size_t i = 0; i < big->size(); ++i) acc += prod[i] * moments[i];
    return static_cast<double>(acc);
}

double l2_norm(const Polynomial& f, const JacobiParams& kappa) {
    return std::sqrt(std::max(0.0, inner_product(f, f, kappa)));
}

}  // namespace sbern
