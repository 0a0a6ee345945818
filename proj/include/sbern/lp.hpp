#pragma once

#include <map>
#include <string>
#include <vector>

#include "sbern/doubling.hpp"
#include "sbern/geometry.hpp"
#include "sbern/ortho_basis.hpp"
#include "sbern/polynomial.hpp"
#include "sbern/util.hpp"

namespace sbern {

/// The derivative prefactors of the Lp Bernstein inequalities:
///   Diag(i):  phi_i   = sqrt(x_i (1-|x|)) / sqrt(x_i + 1 - |x|), paired with d_i
///   Pair(i,j): phi_ij = sqrt(x_i x_j) / sqrt(x_i + x_j), paired with d_i - d_j
struct PhiFactor {
    enum class Which { Diag, Pair } which = Which::Diag;
    int i = 1, j = 2;

    static PhiFactor diag(int i) { return {Which::Diag, i, 0}; }
    static PhiFactor pair(int i, int j) { return {Which::Pair, i, j}; }
    std::string label() const;
};

/// Continuous extension by 0 where the denominator vanishes.
double phi(const SimplexPoint& x, const PhiFactor& factor);

/// The matching difference derivative (d_i for Diag, d_i - d_j for Pair).
Polynomial phi_derivative(const Polynomial& f, const PhiFactor& factor, int order);

struct LpNormSpec {
    double p = 2.0;  // >= 1; infinity() means the sup norm
    DoublingWeightSpec weight;
    int quad_degree = 40;    // cubature exactness target for Jacobi-backed weights
    double grid_h = 1.0 / 64.0;  // metric grid resolution (sup norm / Riemann fallback)
};

/// ||f||_{w,p}: cubature for Jacobi-backed weights, metric-grid sup for
/// p = infinity, Riemann sums in sqrt-coordinates with a Richardson check for
/// custom weights (throws on > 1% drift).
double lp_norm(const Polynomial& f, const LpNormSpec& spec);

/// ||phi^r g||_{kappa,2} with the phi factor under the integral (cubature).
double phi_weighted_l2(const Polynomial& g, const PhiFactor& factor, int order,
                       const JacobiParams& kappa, int quad_degree);

/// Riemann sum of integrand over the simplex in sqrt-coordinates
/// (cells_per_axis^d cells in the positive-quadrant ball).
double riemann_integral(int dim, const std::function<double(const SimplexPoint&)>& integrand,
                        int cells_per_axis);

struct RatioRow {
    int n = 0;
    int r = 1;
    double p = 2.0;
    std::string factor;
    std::string weight;
    std::string f_id;
    double ratio = 0.0;
};

struct RatioReport {
    std::vector<RatioRow> rows;
    /// sup over tested f per (weight, factor, r, p, n)
    std::map<std::string, std::map<int, double>> sup_by_n;
    /// least-squares slope of log sup vs log n per (weight, factor, r, p)
    std::map<std::string, double> slope;
};

struct SweepConfig {
    int d = 2;
    std::vector<int> ns{2, 4, 8};
    std::vector<int> rs{1};
    std::vector<double> ps{2.0};
    int random_per_n = 10;
    std::uint64_t seed = 1;
    bool include_extremal = true;
};

/// Ratios ||phi^r d^r f||_{w,p} / (n^r ||f||_{w,p}) over random orthonormal-
/// coefficient polynomials plus the extremal candidates (P_e1, R_e1 and the
/// classical-form maximizer).
RatioReport bernstein_ratio_sweep(const SweepConfig& cfg,
                                  std::vector<DoublingWeightSpec> weights);

/// f*_{beta,n}(x) = max over the grid of |f(y)| / (1 + n d(x,y))^beta.
double maximal_function(const Polynomial& f, double beta, int n, const SimplexPoint& x,
                        const std::vector<SimplexPoint>& grid);

/// Batch version sharing the |f| values on the grid.
std::vector<double> maximal_function_values(const Polynomial& f, double beta, int n,
                                            const std::vector<SimplexPoint>& eval_at,
                                            const std::vector<SimplexPoint>& grid);

struct MzRow {
    int n = 0;
    std::string f_id;
    double lhs = 0.0;   // ||f||_{w,p}^p
    double rhs = 0.0;   // sum_y w(B(y, eps)) min_{B(y, eps)} |f|^p
    double c = 0.0;     // lhs / rhs
};

/// Marcinkiewicz–Zygmund check over a maximal (delta/n)-separated set;
/// probe_scale refines the probe grid for convergence checks.
std::vector<MzRow> mz_check(int n, double delta, const DoublingWeightSpec& w, double p,
                            const std::vector<std::pair<std::string, Polynomial>>& fs,
                            int probe_scale = 1);

struct ShrinkRow {
    int n = 0;
    std::string f_id;
    double p = 1.0;  // infinity() for the sup variant
    double ratio = 0.0;  // whole-simplex mass over the shrunken-domain mass
};

/// Lemma "shrink": int |f|^p w over the simplex vs over the shrunken simplex
/// {delta/n < bary_i <= 1 - delta/n}; also the sup-norm variant.
std::vector<ShrinkRow> shrink_check(int n, double delta, const DoublingWeightSpec& w, double p,
                                    const std::vector<std::pair<std::string, Polynomial>>& fs);

/// Deterministic test polynomials for the sweeps: seeded random orthonormal
/// coefficients plus extremal candidates.
std::vector<std::pair<std::string, Polynomial>> sweep_test_functions(const OrthoBasis& basis,
                                                                     int n, int random_count,
                                                                     Rng& rng,
                                                                     bool include_extremal);

}  // namespace sbern
