#include "sbern/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sbern/forms.hpp"
#include "sbern/quadrature.hpp"
#include "sbern/separated.hpp"

namespace sbern {

std::string PhiFactor::label() const {
    std::ostringstream os;
    if (which == Which::Diag)
        os << "phi_" << i;
    else
        os << "phi_" << i << "," << j;
    return os.str();
}

double phi(const SimplexPoint& x, const PhiFactor& factor) {
    if (factor.which == PhiFactor::Which::Diag) {
        const double a = x.bary(factor.i), b = x.slack();
        const double den = a + b;
        return den > 0.0 ? std::sqrt(a * b / den) : 0.0;
    }
    const double a = x.bary(factor.i), b = x.bary(factor.j);
    const double den = a + b;
    return den > 0.0 ? std::sqrt(a * b / den) : 0.0;
}

Polynomial phi_derivative(const Polynomial& f, const PhiFactor& factor, int order) {
    Polynomial g = f;
    for (int r = 0; r < order; ++r)
        g = (factor.which == PhiFactor::Which::Diag) ? g.partial(factor.i)
                                                     : g.diff_pair(factor.i, factor.j);
    return g;
}

double riemann_integral(int dim, const std::function<double(const SimplexPoint&)>& integrand,
                        int cells_per_axis) {
    const double h = 1.0 / cells_per_axis;
    const double cell = std::pow(h, dim) * std::pow(2.0, dim);
    std::vector<int> idx(dim, 0);
    std::vector<double> u(dim), y(dim);
    double acc = 0.0;
    while (true) {
        double norm2 = 0.0, jac = 1.0;
        for (int a = 0; a < dim; ++a) {
            u[a] = (idx[a] + 0.5) * h;
            norm2 += u[a] * u[a];
            jac *= u[a];
        }
        if (norm2 < 1.0) {
            for (int a = 0; a < dim; ++a) y[a] = u[a] * u[a];
            acc += integrand(SimplexPoint(y)) * jac;
        }
        int a = dim - 1;
        while (a >= 0 && ++idx[a] == cells_per_axis) idx[a--] = 0;
        if (a < 0) break;
    }
    return acc * cell;
}

double lp_norm(const Polynomial& f, const LpNormSpec& spec) {
    const int d = f.dim();
    if (spec.weight.dim() != d) throw std::invalid_argument("lp_norm: dimension mismatch");
    if (std::isinf(spec.p)) {
        double sup = 0.0;
        for (const auto& x : metric_grid(d, spec.grid_h))
            sup = std::max(sup, std::abs(f.evaluate(x.coords())));
        return sup;
    }
    if (!(spec.p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    const auto kind = spec.weight.kind();
    if (kind == DoublingWeightSpec::Kind::Custom) {
        const int cells = std::max(64, static_cast<int>(std::lround(2.0 / spec.grid_h)));
        auto integrand = [&](const SimplexPoint& y) {
            return spec.weight.density(y) * std::pow(std::abs(f.evaluate(y.coords())), spec.p);
        };
        const double coarse = riemann_integral(d, integrand, cells);
        const double fine = riemann_integral(d, integrand, 2 * cells);
        if (std::abs(coarse - fine) > 0.01 * (std::abs(fine) + 1e-300))
            throw std::runtime_error("lp_norm: Riemann refinement drifted by more than 1%");
        return std::pow(fine, 1.0 / spec.p);
    }
    const JacobiParams& kappa = *spec.weight.kappa();
    const Cubature cub = build_cubature(kappa, spec.quad_degree, 0.0);
    const bool smooth = kind == DoublingWeightSpec::Kind::JacobiTimesSmooth;
    double acc = 0.0;
    for (std::size_t q = 0; q < cub.nodes.size(); ++q) {
        const double extra = smooth ? spec.weight.factor()(cub.nodes[q]) : 1.0;
        acc += cub.weights[q] * extra *
               std::pow(std::abs(f.evaluate(cub.nodes[q].coords())), spec.p);
    }
    return std::pow(acc, 1.0 / spec.p);
}

double phi_weighted_l2(const Polynomial& g, const PhiFactor& factor, int order,
                       const JacobiParams& kappa, int quad_degree) {
    const Cubature cub = build_cubature(kappa, quad_degree, 0.0);
    double acc = 0.0;
    for (std::size_t q = 0; q < cub.nodes.size(); ++q) {
        const double ph = std::pow(phi(cub.nodes[q], factor), order);
        const double v = ph * g.evaluate(cub.nodes[q].coords());
        acc += cub.weights[q] * v * v;
    }
    return std::sqrt(std::max(0.0, acc));
}

std::vector<std::pair<std::string, Polynomial>> sweep_test_functions(const OrthoBasis& basis,
                                                                     int n, int random_count,
                                                                     Rng& rng,
                                                                     bool include_extremal) {
    std::vector<std::pair<std::string, Polynomial>> out;
    const auto flat = basis.flattened(n);
    for (int k = 0; k < random_count; ++k) {
        Polynomial f(basis.kappa().dim(), n);
        for (const auto& u : flat) f = f + rng.normal() * u;
        std::ostringstream id;
        id << "rand" << k;
        out.emplace_back(id.str(), f.with_degree_bound(n));
    }
    if (include_extremal && n >= 1) {
        out.emplace_back("P_e1", special_p_e1(n, basis.kappa()));
        out.emplace_back("R_e1", special_r_e1(n, basis.kappa()));
        const SharpConstant sc = sharp_constant({FormKind::classical()}, n, basis.kappa(), &basis);
        out.emplace_back("argmax", sc.argmax.with_degree_bound(n));
    }
    return out;
}

namespace {

std::string ratio_key(const std::string& weight, const std::string& factor, int r, double p) {
    std::ostringstream os;
    os << weight << "|" << factor << "|r" << r << "|p";
    if (std::isinf(p))
        os << "inf";
    else
        os << p;
    return os.str();
}

std::string kappa_tag(const JacobiParams& k) {
    std::ostringstream os;
    for (double v : k.kappa()) os << v << ",";
    return os.str();
}

// integration nodes with measure weights for one doubling weight
struct NodeSet {
    std::vector<SimplexPoint> nodes;
    std::vector<double> measure;
};

NodeSet weight_nodes(const DoublingWeightSpec& w, int n) {
    NodeSet out;
    if (w.kind() == DoublingWeightSpec::Kind::Custom) {
        const int d = w.dim();
        const int cells = 128;
        const double h = 1.0 / cells;
        const double cellw = std::pow(h, d) * std::pow(2.0, d);
        std::vector<int> idx(d, 0);
        std::vector<double> u(d), y(d);
        while (true) {
            double norm2 = 0.0, jac = 1.0;
            for (int a = 0; a < d; ++a) {
                u[a] = (idx[a] + 0.5) * h;
                norm2 += u[a] * u[a];
                jac *= u[a];
            }
            if (norm2 < 1.0) {
                for (int a = 0; a < d; ++a) y[a] = u[a] * u[a];
                SimplexPoint p(y);
                out.measure.push_back(cellw * jac * w.density(p));
                out.nodes.push_back(std::move(p));
            }
            int a = d - 1;
            while (a >= 0 && ++idx[a] == cells) idx[a--] = 0;
            if (a < 0) break;
        }
        return out;
    }
    const JacobiParams& kappa = *w.kappa();
    const Cubature cub = build_cubature(kappa, 2 * n + 16, 0.0);
    const bool smooth = w.kind() == DoublingWeightSpec::Kind::JacobiTimesSmooth;
    out.nodes = cub.nodes;
    out.measure.resize(cub.nodes.size());
    for (std::size_t q = 0; q < cub.nodes.size(); ++q)
        out.measure[q] = cub.weights[q] * (smooth ? w.factor()(cub.nodes[q]) : 1.0);
    return out;
}

}  // namespace

RatioReport bernstein_ratio_sweep(const SweepConfig& cfg, std::vector<DoublingWeightSpec> weights) {
    const int d = cfg.d;
    RatioReport report;
    const int nmax = *std::max_element(cfg.ns.begin(), cfg.ns.end());
    const bool want_inf =
        std::any_of(cfg.ps.begin(), cfg.ps.end(), [](double p) { return std::isinf(p); });
    std::vector<double> finite_ps;
    for (double p : cfg.ps)
        if (!std::isinf(p)) finite_ps.push_back(p);

    std::vector<PhiFactor> factors;
    for (int i = 1; i <= d; ++i) factors.push_back(PhiFactor::diag(i));
    for (int i = 1; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j) factors.push_back(PhiFactor::pair(i, j));
    const int per_f = 1 + static_cast<int>(factors.size()) * static_cast<int>(cfg.rs.size());

    // group the weights by their kappa base so random test functions (and the
    // weight-independent sup-norm scans) are shared
    std::map<std::string, std::pair<JacobiParams, std::vector<std::size_t>>> groups;
    for (std::size_t wi = 0; wi < weights.size(); ++wi) {
        const JacobiParams kappa =
            weights[wi].kappa() ? *weights[wi].kappa() : JacobiParams::zero(d);
        auto it = groups.try_emplace(kappa_tag(kappa), kappa, std::vector<std::size_t>{}).first;
        it->second.second.push_back(wi);
    }

    std::map<int, std::vector<SimplexPoint>> inf_grids;

    for (auto& [tag, group] : groups) {
        const JacobiParams& kappa = group.first;
        const OrthoBasis basis = build_basis(kappa, nmax);

        for (int n : cfg.ns) {
            Rng rng(cfg.seed ^ (0x9e37ULL * static_cast<std::uint64_t>(n)) ^
                    std::hash<std::string>{}(tag));
            const auto fs = sweep_test_functions(basis, n, cfg.random_per_n, rng,
                                                 cfg.include_extremal);
            const auto table = monomial_table(d, n);
            const std::size_t nmono = table->size();
            const std::size_t ncols = fs.size() * per_f;

            Eigen::MatrixXd coeffs(nmono, ncols);
            for (std::size_t fi = 0; fi < fs.size(); ++fi) {
                std::size_t col = fi * per_f;
                auto put = [&](const Polynomial& p) {
                    const Polynomial q = p.with_degree_bound(n);
                    for (std::size_t m = 0; m < nmono; ++m) coeffs(m, col) = q.coeffs()[m];
                    ++col;
                };
                put(fs[fi].second);
                for (const auto& factor : factors)
                    for (int r : cfg.rs) put(phi_derivative(fs[fi].second, factor, r));
            }

            // weight-independent sup-norm aggregates over the metric grid
            std::vector<double> gmax(ncols, 0.0);
            if (want_inf) {
                auto it = inf_grids.find(n);
                if (it == inf_grids.end())
                    it = inf_grids.emplace(n, metric_grid(d, 1.0 / (8.0 * n))).first;
                const auto& grid = it->second;
                const Eigen::MatrixXf coeffs_f = coeffs.cast<float>();
                const std::size_t chunk = 8192;
                Eigen::MatrixXf mono, vals;
                std::vector<std::vector<float>> phir(factors.size() * cfg.rs.size());
                for (std::size_t start = 0; start < grid.size(); start += chunk) {
                    const std::size_t len = std::min(chunk, grid.size() - start);
                    mono.resize(len, nmono);
                    for (std::size_t row = 0; row < len; ++row) {
                        const auto& c = grid[start + row].coords();
                        for (std::size_t m = 0; m < nmono; ++m) {
                            const long par = table->parent(m);
                            mono(row, m) = (par < 0)
                                               ? 1.0f
                                               : mono(row, par) *
                                                     static_cast<float>(c[table->parent_axis(m)]);
                        }
                    }
                    vals.noalias() = mono * coeffs_f;
                    for (std::size_t fc = 0; fc < factors.size(); ++fc)
                        for (std::size_t ri = 0; ri < cfg.rs.size(); ++ri) {
                            auto& pv = phir[fc * cfg.rs.size() + ri];
                            pv.resize(len);
                            for (std::size_t row = 0; row < len; ++row) {
                                const float ph =
                                    static_cast<float>(phi(grid[start + row], factors[fc]));
                                float acc = 1.0f;
                                for (int k = 0; k < cfg.rs[ri]; ++k) acc *= ph;
                                pv[row] = acc;
                            }
                        }
                    for (std::size_t col = 0; col < ncols; ++col) {
                        const std::size_t within = col % per_f;
                        double best = gmax[col];
                        if (within == 0) {
                            for (std::size_t row = 0; row < len; ++row)
                                best = std::max(best,
                                                static_cast<double>(std::abs(vals(row, col))));
                        } else {
                            const auto& pv = phir[within - 1];
                            for (std::size_t row = 0; row < len; ++row)
                                best = std::max(best, static_cast<double>(
                                                          pv[row] * std::abs(vals(row, col))));
                        }
                        gmax[col] = best;
                    }
                }
            }

            // per-weight finite-p aggregates over the integration nodes
            for (std::size_t wi : group.second) {
                const DoublingWeightSpec& w = weights[wi];
                std::vector<std::vector<double>> acc(
                    finite_ps.size(), std::vector<double>(ncols, 0.0));
                if (!finite_ps.empty()) {
                    const NodeSet nodeset = weight_nodes(w, n);
                    const std::size_t chunk = 4096;
                    Eigen::MatrixXd mono, vals;
                    for (std::size_t start = 0; start < nodeset.nodes.size(); start += chunk) {
                        const std::size_t len = std::min(chunk, nodeset.nodes.size() - start);
                        mono.resize(len, nmono);
                        for (std::size_t row = 0; row < len; ++row) {
                            const auto& c = nodeset.nodes[start + row].coords();
                            for (std::size_t m = 0; m < nmono; ++m) {
                                const long par = table->parent(m);
                                mono(row, m) =
                                    (par < 0) ? 1.0
                                              : mono(row, par) * c[table->parent_axis(m)];
                            }
                        }
                        vals.noalias() = mono * coeffs;
                        for (std::size_t row = 0; row < len; ++row) {
                            const SimplexPoint& y = nodeset.nodes[start + row];
                            const double mw = nodeset.measure[start + row];
                            std::vector<double> phiv(factors.size());
                            for (std::size_t fc = 0; fc < factors.size(); ++fc)
                                phiv[fc] = phi(y, factors[fc]);
                            for (std::size_t col = 0; col < ncols; ++col) {
                                const std::size_t within = col % per_f;
                                double v = std::abs(vals(row, col));
                                if (within > 0) {
                                    const std::size_t fc = (within - 1) / cfg.rs.size();
                                    const int r = cfg.rs[(within - 1) % cfg.rs.size()];
                                    double ph = 1.0;
                                    for (int k = 0; k < r; ++k) ph *= phiv[fc];
                                    v *= ph;
                                }
                                for (std::size_t pi = 0; pi < finite_ps.size(); ++pi)
                                    acc[pi][col] += mw * std::pow(v, finite_ps[pi]);
                            }
                        }
                    }
                }

                for (std::size_t fi = 0; fi < fs.size(); ++fi) {
                    const std::size_t base_col = fi * per_f;
                    for (double p : cfg.ps) {
                        double fnorm;
                        if (std::isinf(p)) {
                            fnorm = gmax[base_col];
                        } else {
                            const std::size_t pi =
                                std::find(finite_ps.begin(), finite_ps.end(), p) -
                                finite_ps.begin();
                            fnorm = std::pow(acc[pi][base_col], 1.0 / p);
                        }
                        if (!(fnorm > 0.0)) continue;
                        std::size_t off = 1;
                        for (std::size_t fc = 0; fc < factors.size(); ++fc) {
                            for (int r : cfg.rs) {
                                const std::size_t col = base_col + off++;
                                double num;
                                if (std::isinf(p)) {
                                    num = gmax[col];
                                } else {
                                    const std::size_t pi =
                                        std::find(finite_ps.begin(), finite_ps.end(), p) -
                                        finite_ps.begin();
                                    num = std::pow(acc[pi][col], 1.0 / p);
                                }
                                const double ratio = num / (std::pow(n, r) * fnorm);
                                report.rows.push_back({n, r, p, factors[fc].label(), w.label(),
                                                       fs[fi].first, ratio});
                                const std::string key =
                                    ratio_key(w.label(), factors[fc].label(), r, p);
                                auto& slot = report.sup_by_n[key][n];
                                slot = std::max(slot, ratio);
                            }
                        }
                    }
                }
            }
        }
    }

    for (const auto& [key, by_n] : report.sup_by_n) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int m = 0;
        for (const auto& [n, sup] : by_n) {
            if (!(sup > 0.0)) continue;
            const double lx = std::log(static_cast<double>(n)), ly = std::log(sup);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++m;
        }
        report.slope[key] = (m >= 2) ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : 0.0;
    }
    return report;
}

double maximal_function(const Polynomial& f, double beta, int n, const SimplexPoint& x,
                        const std::vector<SimplexPoint>& grid) {
    if (!(beta > 0.0)) throw std::invalid_argument("maximal_function: beta must be positive");
    double best = std::abs(f.evaluate(x.coords()));  // y = x is always admissible
    for (const auto& y : grid) {
        const double v =
            std::abs(f.evaluate(y.coords())) / std::pow(1.0 + n * distance(x, y), beta);
        best = std::max(best, v);
    }
    return best;
}

std::vector<double> maximal_function_values(const Polynomial& f, double beta, int n,
                                            const std::vector<SimplexPoint>& eval_at,
                                            const std::vector<SimplexPoint>& grid) {
    std::vector<double> fabs(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g)
        fabs[g] = std::abs(f.evaluate(grid[g].coords()));
    std::vector<double> out(eval_at.size(), 0.0);
    for (std::size_t i = 0; i < eval_at.size(); ++i) {
        double best = std::abs(f.evaluate(eval_at[i].coords()));
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const double v = fabs[g] / std::pow(1.0 + n * distance(eval_at[i], grid[g]), beta);
            best = std::max(best, v);
        }
        out[i] = best;
    }
    return out;
}

std::vector<MzRow> mz_check(int n, double delta, const DoublingWeightSpec& w, double p,
                            const std::vector<std::pair<std::string, Polynomial>>& fs,
                            int probe_scale) {
    const int d = w.dim();
    const double eps = delta / n;
    const double half_pi = 0.5 * std::acos(-1.0);
    const int probe_density = static_cast<int>(std::ceil(half_pi / (eps / 4.0))) + 1;
    // the separated set is canonical; probe_scale only refines the grid used
    // for the ball minima (convergence checks)
    const SeparatedSet sep = separated_set(d, eps, probe_density);
    const auto probes = metric_grid(d, half_pi / (probe_density * std::max(1, probe_scale)));

    std::vector<double> ball(sep.points.size());
    for (std::size_t s = 0; s < sep.points.size(); ++s)
        ball[s] = ball_measure(w, sep.points[s], eps, 8192, 99);

    // probes covered by each ball
    std::vector<std::vector<int>> members(sep.points.size());
    for (std::size_t g = 0; g < probes.size(); ++g)
        for (std::size_t s = 0; s < sep.points.size(); ++s)
            if (distance(probes[g], sep.points[s]) <= eps) members[s].push_back(static_cast<int>(g));

    std::vector<MzRow> rows;
    for (const auto& [id, f] : fs) {
        std::vector<double> fp(probes.size());
        for (std::size_t g = 0; g < probes.size(); ++g)
            fp[g] = std::pow(std::abs(f.evaluate(probes[g].coords())), p);
        double rhs = 0.0;
        for (std::size_t s = 0; s < sep.points.size(); ++s) {
            double mn = std::numeric_limits<double>::infinity();
            for (int g : members[s]) mn = std::min(mn, fp[g]);
            if (std::isfinite(mn)) rhs += ball[s] * mn;
        }
        LpNormSpec spec{p, w, 2 * std::max(n, 4) + 16, 1.0 / (8.0 * n)};
        const double lhs = std::pow(lp_norm(f, spec), p);
        rows.push_back({n, id, lhs, rhs, rhs > 0.0 ? lhs / rhs : 0.0});
    }
    return rows;
}

std::vector<ShrinkRow> shrink_check(int n, double delta, const DoublingWeightSpec& w, double p,
                                    const std::vector<std::pair<std::string, Polynomial>>& fs) {
    const int d = w.dim();
    const double cut = delta / n;
    if (!(cut < 1.0 / (d + 1)))
        throw std::invalid_argument("shrink_check: shrunken simplex is empty (delta/n too large)");
    auto inside = [&](const SimplexPoint& y) {
        for (int i = 1; i <= d + 1; ++i)
            if (!(y.bary(i) > cut && y.bary(i) <= 1.0 - cut)) return false;
        return true;
    };
    std::vector<ShrinkRow> rows;
    for (const auto& [id, f] : fs) {
        if (std::isinf(p)) {
            double full = 0.0, shrunk = 0.0;
            for (const auto& y : metric_grid(d, 1.0 / (8.0 * n))) {
                const double v = std::abs(f.evaluate(y.coords()));
                full = std::max(full, v);
                if (inside(y)) shrunk = std::max(shrunk, v);
            }
            rows.push_back({n, id, p, shrunk > 0.0 ? full / shrunk : 0.0});
            continue;
        }
        auto whole = [&](const SimplexPoint& y) {
            return w.density(y) * std::pow(std::abs(f.evaluate(y.coords())), p);
        };
        auto restricted = [&](const SimplexPoint& y) { return inside(y) ? whole(y) : 0.0; };
        const int cells = 192;
        const double num = riemann_integral(d, whole, cells);
        const double den = riemann_integral(d, restricted, cells);
        rows.push_back({n, id, p, den > 0.0 ? num / den : 0.0});
    }
    return rows;
}

}  // namespace sbern
