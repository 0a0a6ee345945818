#include "sbern/ortho_basis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <quadmath.h>
#include <sstream>
#include <stdexcept>

#include "sbern/jacobi1d.hpp"

namespace sbern {

namespace {

// quad-precision moment: the monomial Gram reaches condition ~1e12 at the
// kappa grid corners, so double / long double pipelines cannot deliver
// spectrally pure levels there
using quad = __float128;

quad detail_moment_q(const std::vector<int>& mono, const JacobiParams& kappa) {
    const auto& k = kappa.kappa();
    quad total = 0;
    for (int a : mono) total += a;
    quad lg = lgammaq(static_cast<quad>(kappa.total()) + kappa.dim() + 1) -
              lgammaq(static_cast<quad>(kappa.total()) + total + kappa.dim() + 1);
    for (std::size_t i = 0; i < k.size(); ++i) {
        const quad ai = (i < mono.size()) ? mono[i] : 0;
        lg += lgammaq(static_cast<quad>(k[i]) + ai + 1) - lgammaq(static_cast<quad>(k[i]) + 1);
    }
    return expq(lg);
}

}  // namespace

std::vector<Polynomial> OrthoBasis::flattened(int n) const {
    if (n > max_degree_) throw std::out_of_range("OrthoBasis::flattened: degree out of range");
    std::vector<Polynomial> out;
    for (int m = 0; m <= n; ++m)
        for (const auto& u : levels_[m]) out.push_back(u);
    return out;
}

Polynomial OrthoBasis::project(const Polynomial& f, int m) const {
    if (m < 0 || m > max_degree_) throw std::out_of_range("OrthoBasis::project: degree out of range");
    Polynomial out(f.dim(), std::max(m, 0));
    for (const auto& u : levels_[m]) out = out + inner_product(f, u, kappa_) * u;
    return out;
}

double OrthoBasis::orthonormality_residual() const {
    // quad precision throughout: these products cancel ~1e8 of coefficient
    // mass, far beyond what double (or long double) resolves
    const auto all = flattened(max_degree_);
    const int d = kappa_.dim();
    const auto table = monomial_table(d, max_degree_);
    const auto big = monomial_table(d, 2 * max_degree_);
    const std::size_t n = table->size();
    std::vector<__float128> gram(n * n);
    std::vector<int> sum(d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const auto& ei = table->exponents(i);
            const auto& ej = table->exponents(j);
            for (int a = 0; a < d; ++a) sum[a] = ei[a] + ej[a];
            gram[i * n + j] = gram[j * n + i] =
                detail_moment_q(big->exponents(big->index_of(sum)), kappa_);
        }
    std::vector<__float128> coeffs(all.size() * n);
    for (std::size_t k = 0; k < all.size(); ++k) {
        const Polynomial q = all[k].with_degree_bound(max_degree_);
        for (std::size_t i = 0; i < n; ++i) coeffs[k * n + i] = q.coeffs()[i];
    }
    double worst = 0.0;
    std::vector<__float128> gv(n);
    for (std::size_t k = 0; k < all.size(); ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            __float128 acc = 0;
            for (std::size_t j = 0; j < n; ++j) acc += gram[i * n + j] * coeffs[k * n + j];
            gv[i] = acc;
        }
        for (std::size_t l = k; l < all.size(); ++l) {
            __float128 acc = 0;
            for (std::size_t i = 0; i < n; ++i) acc += coeffs[l * n + i] * gv[i];
            const __float128 dev = fabsq(acc - (k == l ? __float128(1) : __float128(0)));
            worst = std::max(worst, static_cast<double>(dev));
        }
    }
    return worst;
}

OrthoBasis build_basis(const JacobiParams& kappa, int max_degree) {
    const int d = kappa.dim();
    if (max_degree < 0 || max_degree > 20)
        throw std::invalid_argument("build_basis: degree capped at 20 (double precision)");
    const auto table = monomial_table(d, max_degree);
    const auto big = monomial_table(d, 2 * max_degree);
    const std::size_t n_mono = table->size();

    std::vector<quad> moments(big->size());
    for (std::size_t i = 0; i < big->size(); ++i)
        moments[i] = detail_moment_q(big->exponents(i), kappa);

    std::vector<quad> gram(n_mono * n_mono);
    std::vector<int> sum(d);
    for (std::size_t i = 0; i < n_mono; ++i)
        for (std::size_t j = i; j < n_mono; ++j) {
            const auto& ei = table->exponents(i);
            const auto& ej = table->exponents(j);
            for (int a = 0; a < d; ++a) sum[a] = ei[a] + ej[a];
            gram[i * n_mono + j] = gram[j * n_mono + i] = moments[big->index_of(sum)];
        }

    double gram_condition;
    {
        Eigen::MatrixXd gd(n_mono, n_mono);
        for (std::size_t i = 0; i < n_mono; ++i)
            for (std::size_t j = 0; j < n_mono; ++j)
                gd(i, j) = static_cast<double>(gram[i * n_mono + j]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gd, Eigen::EigenvaluesOnly);
        gram_condition = es.eigenvalues()(n_mono - 1) / std::max(es.eigenvalues()(0), 1e-300);
    }

    // diagonal prescale (unit-norm monomials) keeps the coefficient spread down
    std::vector<quad> scale(n_mono);
    for (std::size_t i = 0; i < n_mono; ++i) scale[i] = sqrtq(gram[i * n_mono + i]);
    std::vector<quad> gs(n_mono * n_mono);
    for (std::size_t i = 0; i < n_mono; ++i)
        for (std::size_t j = 0; j < n_mono; ++j)
            gs[i * n_mono + j] = gram[i * n_mono + j] / (scale[i] * scale[j]);

    auto apply_gs = [&](const std::vector<quad>& v, std::vector<quad>& out) {
        for (std::size_t i = 0; i < n_mono; ++i) {
            quad acc = 0;
            const quad* row = gs.data() + i * n_mono;
            for (std::size_t j = 0; j < n_mono; ++j) acc += row[j] * v[j];
            out[i] = acc;
        }
    };

    // Gram-Schmidt with a reorthogonalization pass in the scaled metric;
    // q is stored column-major (column k = coefficients of element k)
    std::vector<quad> q(n_mono * n_mono, 0);
    std::vector<quad> v(n_mono), gv(n_mono);
    for (std::size_t k = 0; k < n_mono; ++k) {
        std::fill(v.begin(), v.end(), quad(0));
        v[k] = 1;
        for (int pass = 0; pass < 2 && k > 0; ++pass) {
            apply_gs(v, gv);
            for (std::size_t m = 0; m < k; ++m) {
                const quad* qm = q.data() + m * n_mono;
                quad c = 0;
                for (std::size_t i = 0; i < n_mono; ++i) c += qm[i] * gv[i];
                for (std::size_t i = 0; i < n_mono; ++i) v[i] -= c * qm[i];
            }
        }
        apply_gs(v, gv);
        quad norm2 = 0;
        for (std::size_t i = 0; i < n_mono; ++i) norm2 += v[i] * gv[i];
        if (!(norm2 > 0)) {
            std::ostringstream msg;
            msg << "build_basis: orthogonality lost at monomial " << k << " (gram condition "
                << gram_condition << ")";
            throw std::runtime_error(msg.str());
        }
        const quad inv = 1 / sqrtq(norm2);
        quad* qk = q.data() + k * n_mono;
        for (std::size_t i = 0; i < n_mono; ++i) qk[i] = v[i] * inv;
    }

    // residual check in the scaled metric
    double residual = 0.0;
    for (std::size_t k = 0; k < n_mono; ++k) {
        const quad* qk = q.data() + k * n_mono;
        std::copy(qk, qk + n_mono, v.begin());
        apply_gs(v, gv);
        for (std::size_t l = k; l < n_mono; ++l) {
            const quad* ql = q.data() + l * n_mono;
            quad acc = 0;
            for (std::size_t i = 0; i < n_mono; ++i) acc += ql[i] * gv[i];
            const quad dev = fabsq(acc - (k == l ? quad(1) : quad(0)));
            residual = std::max(residual, static_cast<double>(dev));
        }
    }
    if (residual > 1e-8) {
        std::ostringstream msg;
        msg << "build_basis: orthonormality residual " << residual
            << " exceeds 1e-8 (gram condition " << gram_condition << ")";
        throw std::runtime_error(msg.str());
    }

    std::vector<std::vector<Polynomial>> levels(max_degree + 1);
    for (std::size_t k = 0; k < n_mono; ++k) {
        const int deg = table->degree(k);
        Polynomial p(d, max_degree);
        const quad* qk = q.data() + k * n_mono;
        for (std::size_t i = 0; i < n_mono; ++i)
            if (qk[i] != 0)
                p.coeff_at(table->exponents(i)) = static_cast<double>(qk[i] / scale[i]);
        levels[deg].push_back(std::move(p));
    }
    for (int m = 0; m <= max_degree; ++m) {
        if (static_cast<std::int64_t>(levels[m].size()) != binomial(m + d - 1, m))
            throw std::runtime_error("build_basis: level size mismatch");
    }
    return OrthoBasis(kappa, max_degree, std::move(levels), gram_condition);
}

namespace {

Polynomial jacobi_in_argument(int n, double a, double b, const Polynomial& t) {
    const int d = t.dim();
    Polynomial p0 = Polynomial::constant(d, 1.0).with_degree_bound(std::max(1, n));
    if (n == 0) return p0;
    Polynomial p1 = (0.5 * (a + b + 2.0)) * t + Polynomial::constant(d, 0.5 * (a - b));
    if (n == 1) return p1.with_degree_bound(n);
    Polynomial prev = p0, cur = p1;
    for (int m = 1; m < n; ++m) {
        const double c = 2.0 * m + a + b;
        const double a1 = 2.0 * (m + 1.0) * (m + a + b + 1.0) * c;
        const double a2 = (c + 1.0) * (a * a - b * b);
        const double a3 = c * (c + 1.0) * (c + 2.0);
        const double a4 = 2.0 * (m + a) * (m + b) * (c + 2.0);
        Polynomial next = (a2 / a1) * cur + (a3 / a1) * (t * cur) - (a4 / a1) * prev;
        prev = cur;
        cur = next;
    }
    return cur.with_degree_bound(n);
}

}  // namespace

Polynomial special_p_e1(int n, const JacobiParams& kappa) {
    const int d = kappa.dim();
    const double a = kappa.total() - kappa.kappa(1) + d - 1;
    const double b = kappa.kappa(1);
    const Polynomial t = 2.0 * Polynomial::coordinate(d, 1) - Polynomial::constant(d, 1.0);
    return jacobi_in_argument(n, a, b, t);
}

Polynomial special_r_e1(int n, const JacobiParams& kappa) {
    const int d = kappa.dim();
    const double a = kappa.total() - kappa.kappa(d + 1) + d - 1;
    const double b = kappa.kappa(d + 1);
    Polynomial t = Polynomial::constant(d, 1.0);
    for (int i = 1; i <= d; ++i) t = t - 2.0 * Polynomial::coordinate(d, i);
    return jacobi_in_argument(n, a, b, t);
}

void save_basis(const OrthoBasis& basis, const std::string& path) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["d"] = basis.kappa().dim();
    j["max_degree"] = basis.max_degree();
    j["kappa"] = basis.kappa().kappa();
    j["gram_condition"] = basis.gram_condition();
    nlohmann::ordered_json levels = nlohmann::ordered_json::array();
    for (const auto& level : basis.levels()) {
        nlohmann::ordered_json lv = nlohmann::ordered_json::array();
        for (const auto& u : level) lv.push_back(u.coeffs());
        levels.push_back(lv);
    }
    j["levels"] = levels;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_basis: cannot open " + path);
    out << j.dump(1) << "\n";
}

OrthoBasis load_basis(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_basis: cannot open " + path);
    nlohmann::json j;
    in >> j;
    if (j.at("schema_version").get<int>() != 1)
        throw std::runtime_error("load_basis: unsupported schema version");
    const int d = j.at("d").get<int>();
    const int max_degree = j.at("max_degree").get<int>();
    JacobiParams kappa(j.at("kappa").get<std::vector<double>>());
    const auto table = monomial_table(d, max_degree);
    std::vector<std::vector<Polynomial>> levels;
    for (const auto& lv : j.at("levels")) {
        std::vector<Polynomial> level;
        for (const auto& cj : lv) {
            const auto coeffs = cj.get<std::vector<double>>();
            if (coeffs.size() != table->size())
                throw std::runtime_error("load_basis: coefficient count mismatch");
            Polynomial p(d, max_degree);
            for (std::size_t i = 0; i < coeffs.size(); ++i)
                if (coeffs[i] != 0.0) p.coeff_at(table->exponents(i)) = coeffs[i];
            level.push_back(std::move(p));
        }
        levels.push_back(std::move(level));
    }
    return OrthoBasis(std::move(kappa), max_degree, std::move(levels),
                      j.at("gram_condition").get<double>());
}

}  // namespace sbern
