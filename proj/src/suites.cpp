#include "sbern/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "sbern/quadrature.hpp"

#include "sbern/forms.hpp"
#include "sbern/kernels.hpp"
#include "sbern/lp.hpp"
#include "sbern/ortho_basis.hpp"
#include "sbern/spectral.hpp"

namespace sbern::suites {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

namespace {

class CsvFile {
  public:
    CsvFile(const fs::path& path, const std::vector<std::string>& header) : out_(path) {
        if (!out_) throw std::runtime_error("cannot open " + path.string());
        write_row(header);
    }
    void write_row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

  private:
    std::ofstream out_;
};

struct CheckCollector {
    ordered_json checks = ordered_json::array();
    bool all_pass = true;

    void add(const std::string& name, double value, double tol, bool le = true) {
        const bool pass = le ? (value <= tol) : (value >= tol);
        ordered_json c;
        c["name"] = name;
        c["value"] = value;
        c["tol"] = tol;
        c["cmp"] = le ? "<=" : ">=";
        c["pass"] = pass;
        checks.push_back(c);
        all_pass = all_pass && pass;
    }
};

double tol_or(const RunConfig& cfg, const std::string& name, double fallback) {
    auto it = cfg.tol.find(name);
    return it == cfg.tol.end() ? fallback : it->second;
}

std::vector<double> parse_kappa_list(const std::string& list) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

JacobiParams config_kappa(const RunConfig& cfg) {
    if (cfg.kappa.empty()) return JacobiParams::zero(cfg.d);
    if (static_cast<int>(cfg.kappa.size()) != cfg.d + 1)
        throw std::invalid_argument("kappa list must have d+1 entries");
    return JacobiParams(cfg.kappa);
}

std::string kappa_tag(const JacobiParams& k) {
    std::ostringstream os;
    for (std::size_t i = 0; i < k.kappa().size(); ++i) {
        if (i) os << "_";
        os << k.kappa()[i];
    }
    return os.str();
}

OrthoBasis cached_basis(const RunConfig& cfg, const JacobiParams& kappa, int degree) {
    if (cfg.cache_dir.empty()) return build_basis(kappa, degree);
    fs::create_directories(cfg.cache_dir);
    fs::path file = fs::path(cfg.cache_dir) / ("basis_d" + std::to_string(kappa.dim()) + "_n" +
                                               std::to_string(degree) + "_k" + kappa_tag(kappa) +
                                               ".json");
    if (fs::exists(file)) {
        try {
            return load_basis(file.string());
        } catch (const std::exception&) {
            // fall through and rebuild
        }
    }
    OrthoBasis basis = build_basis(kappa, degree);
    save_basis(basis, file.string());
    return basis;
}

std::vector<int> suite_n_range(const RunConfig& cfg, int def_lo, int def_hi) {
    const int lo = cfg.n_lo > 0 ? cfg.n_lo : def_lo;
    const int hi = cfg.n_hi > 0 ? cfg.n_hi : def_hi;
    if (lo > hi) throw std::invalid_argument("empty n range");
    std::vector<int> ns;
    for (int n = lo; n <= hi; ++n) ns.push_back(n);
    return ns;
}

int run_spectral(const RunConfig& cfg, const fs::path& dir, ordered_json& summary,
                 std::ostream& log);
int run_sharp(const RunConfig& cfg, const fs::path& dir, ordered_json& summary, std::ostream& log);
int run_kernels(const RunConfig& cfg, const fs::path& dir, ordered_json& summary,
                std::ostream& log);
int run_lp(const RunConfig& cfg, const fs::path& dir, ordered_json& summary, std::ostream& log);

void write_summary(const fs::path& dir, ordered_json& summary, const CheckCollector& col) {
    summary["checks"] = col.checks;
    summary["pass"] = col.all_pass;
    std::ofstream out(dir / "summary.json");
    out << summary.dump(1) << "\n";
}

}  // namespace

DoublingWeightSpec parse_weight(const std::string& spec, int d) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    std::vector<double> ks;
    if (colon != std::string::npos) ks = parse_kappa_list(spec.substr(colon + 1));
    if (ks.empty()) ks.assign(d + 1, 0.0);
    if (static_cast<int>(ks.size()) != d + 1)
        throw std::invalid_argument("weight spec needs d+1 kappa entries: " + spec);
    if (kind == "jacobi") return DoublingWeightSpec::jacobi(JacobiParams(ks), spec);
    if (kind == "jacobi-sin")
        return DoublingWeightSpec::jacobi_times_smooth(
            JacobiParams(ks),
            [](const SimplexPoint& x) { return 1.0 + 0.5 * std::sin(3.0 * x[0]); }, spec);
    throw std::invalid_argument("unknown weight spec: " + spec);
}

Polynomial random_polynomial(int dim, int degree, Rng& rng) {
    Polynomial f(dim, degree);
    const auto& table = f.table();
    for (std::size_t i = 0; i < table.size(); ++i) {
        std::vector<int> e = table.exponents(i);
        f.coeff_at(e) = rng.uniform(-1.0, 1.0);
    }
    return f;
}

double eigenfunction_residual(const JacobiParams& kappa, int nmax, int sample_count,
                              std::uint64_t seed) {
    const OrthoBasis basis = build_basis(kappa, nmax);
    const auto pts = quasi_random_points(kappa.dim(), sample_count, seed);
    double worst = 0.0;
    for (int m = 0; m <= nmax; ++m) {
        const double lam = kappa.lambda(m);
        for (const auto& u : basis.level(m)) {
            const Polynomial r = spectral_residual_hp(u, kappa, lam);
            double rmax = 0.0, umax = 0.0;
            for (const auto& p : pts) {
                rmax = std::max(rmax, std::abs(r.evaluate(p.coords())));
                umax = std::max(umax, std::abs(u.evaluate(p.coords())));
            }
            worst = std::max(worst, rmax / std::max(umax, 1e-300));
        }
    }
    return worst;
}

int run_suite(const RunConfig& cfg, std::ostream& log) {
    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    ordered_json summary;
    summary["schema_version"] = 1;
    summary["suite"] = cfg.suite;
    ordered_json jc;
    jc["d"] = cfg.d;
    jc["n_lo"] = cfg.n_lo;
    jc["n_hi"] = cfg.n_hi;
    jc["kappa"] = cfg.kappa;
    jc["seed"] = cfg.seed;
    jc["weights"] = cfg.weights;
    summary["config"] = jc;

    if (cfg.suite == "spectral") return run_spectral(cfg, dir, summary, log);
    if (cfg.suite == "sharp") return run_sharp(cfg, dir, summary, log);
    if (cfg.suite == "kernels") return run_kernels(cfg, dir, summary, log);
    if (cfg.suite == "lp") return run_lp(cfg, dir, summary, log);
    throw std::invalid_argument("unknown suite: " + cfg.suite);
}

namespace {

int run_spectral(const RunConfig& cfg, const fs::path& dir, ordered_json& summary,
                 std::ostream& log) {
    const JacobiParams kappa = config_kappa(cfg);
    const int d = cfg.d;
    const int deg = suite_n_range(cfg, 1, 6).back();
    const double tol_point = tol_or(cfg, "spectral", 1e-8);
    const double tol_coeff = tol_or(cfg, "coeff", 1e-10);
    const double tol_eigen = tol_or(cfg, "eigen", 1e-8);

    CsvFile csv(dir / "detail_spectral.csv", {"check", "ell", "trial", "residual"});
    CheckCollector col;
    Rng rng(cfg.seed);
    const auto samples = quasi_random_points(d, 40, cfg.seed, 0.06);

    auto want = [&](const std::string& name) { return cfg.check.empty() || cfg.check == name; };

    if (want("eigen")) {
        const double r = eigenfunction_residual(kappa, std::min(deg, 6), 100, cfg.seed);
        csv.write_row({"eigen", "0", "0", format_double(r)});
        col.add("eigenfunction", r, tol_eigen);
    }

    std::vector<Polynomial> fs_, gs_;
    for (int t = 0; t < 5; ++t) {
        fs_.push_back(random_polynomial(d, deg, rng));
        gs_.push_back(random_polynomial(d, deg, rng));
    }

    if (want("selfadj")) {
        double worst_c = 0.0, worst_p = 0.0;
        for (std::size_t t = 0; t < fs_.size(); ++t) {
            const Polynomial lhs = apply_spectral(fs_[t], kappa);
            const Polynomial rhs = self_adjoint_form_rhs(fs_[t], kappa);
            const double c = (rhs - lhs).max_abs_coeff() / (1.0 + lhs.max_abs_coeff());
            const double p = verify_operator_identity(OperatorIdentity::SelfAdj, fs_[t], kappa,
                                                      samples);
            csv.write_row({"selfadj-coeff", "0", std::to_string(t), format_double(c)});
            csv.write_row({"selfadj-point", "0", std::to_string(t), format_double(p)});
            worst_c = std::max(worst_c, c);
            worst_p = std::max(worst_p, p);
        }
        col.add("selfadj_coeff", worst_c, tol_coeff);
        col.add("selfadj_point", worst_p, tol_point);
    }
    if (want("cdk2")) {
        double worst = 0.0;
        for (std::size_t t = 0; t < fs_.size(); ++t) {
            const double r =
                verify_operator_identity(OperatorIdentity::CDk2, fs_[t], kappa, samples);
            csv.write_row({"cdk2", "0", std::to_string(t), format_double(r)});
            worst = std::max(worst, r);
        }
        col.add("cdk2", worst, tol_point);
    }
    if (want("cor23")) {
        double worst = 0.0;
        for (int ell = 1; ell <= d; ++ell)
            for (std::size_t t = 0; t < fs_.size(); ++t) {
                const double r = verify_operator_identity(OperatorIdentity::Cor23, fs_[t], kappa,
                                                          samples, ell);
                csv.write_row({"cor23", std::to_string(ell), std::to_string(t),
                               format_double(r)});
                worst = std::max(worst, r);
            }
        col.add("cor23", worst, tol_point);
    }
    if (want("integral")) {
        double worst = 0.0;
        for (std::size_t t = 0; t < fs_.size(); ++t) {
            const double r0 =
                verify_integral_identity(IntegralIdentity::AdjInt, fs_[t], gs_[t], kappa);
            const double r1 =
                verify_integral_identity(IntegralIdentity::SelfAdj2, fs_[t], gs_[t], kappa);
            csv.write_row({"adjint", "0", std::to_string(t), format_double(r0)});
            csv.write_row({"selfadj2", "0", std::to_string(t), format_double(r1)});
            worst = std::max({worst, r0, r1});
            for (int ell = 1; ell <= d; ++ell) {
                const double r2 = verify_integral_identity(IntegralIdentity::SelfAdj3, fs_[t],
                                                           gs_[t], kappa, ell);
                csv.write_row({"selfadj3", std::to_string(ell), std::to_string(t),
                               format_double(r2)});
                worst = std::max(worst, r2);
            }
        }
        col.add("integral_identities", worst, tol_point);
    }

    write_summary(dir, summary, col);
    log << "spectral: " << (col.all_pass ? "pass" : "FAIL") << "\n";
    return col.all_pass ? 0 : 1;
}

int run_sharp(const RunConfig& cfg, const fs::path& dir, ordered_json& summary,
              std::ostream& log) {
    const JacobiParams kappa = config_kappa(cfg);
    const int d = cfg.d;
    const auto ns = suite_n_range(cfg, 1, 6);
    const double tol_sharp = tol_or(cfg, "sharp", 1e-8);
    const double tol_proj = tol_or(cfg, "proj", 1e-6);

    const OrthoBasis basis = cached_basis(cfg, kappa, ns.back());

    CsvFile csv(dir / "detail_sharp.csv",
                {"set", "n", "lambda_max", "lambda_n", "rel_err", "proj_residual",
                 "multiplicity"});
    CsvFile eqcsv(dir / "detail_equality.csv", {"case", "n", "quotient", "lambda_n", "rel_err"});
    CheckCollector col;

    std::vector<std::pair<std::string, std::vector<FormKind>>> sets;
    sets.emplace_back("classical", std::vector<FormKind>{FormKind::classical()});
    sets.emplace_back("radial", std::vector<FormKind>{FormKind::radial()});
    for (int ell = 1; ell <= d; ++ell)
        sets.emplace_back("axis" + std::to_string(ell),
                          std::vector<FormKind>{FormKind::axis(ell)});

    double worst_rel = 0.0, worst_proj = 0.0, worst_eq = 0.0;
    for (int n : ns) {
        const double lam = kappa.lambda(n);
        for (const auto& [name, kinds] : sets) {
            const SharpConstant sc = sharp_constant(kinds, n, kappa, &basis);
            const double rel = std::abs(sc.lambda_max - lam) / std::max(lam, 1e-300);
            csv.write_row({name, std::to_string(n), format_double(sc.lambda_max),
                           format_double(lam), format_double(rel),
                           format_double(sc.proj_below_norm),
                           std::to_string(sc.multiplicity)});
            if (n >= 1) {
                worst_rel = std::max(worst_rel, rel);
                worst_proj = std::max(worst_proj, sc.proj_below_norm);
            }
        }
        for (const auto& row : equality_case_report(n, kappa)) {
            eqcsv.write_row({row.label, std::to_string(n), format_double(row.quotient),
                             format_double(row.lambda_n), format_double(row.rel_err)});
            worst_eq = std::max(worst_eq, row.rel_err);
        }
    }
    col.add("lambda_rel_err", worst_rel, tol_sharp);
    col.add("argmax_proj_below", worst_proj, tol_proj);
    col.add("equality_rel_err", worst_eq, tol_sharp);

    write_summary(dir, summary, col);
    log << "sharp: " << (col.all_pass ? "pass" : "FAIL") << "\n";
    return col.all_pass ? 0 : 1;
}

int run_kernels(const RunConfig& cfg, const fs::path& dir, ordered_json& summary,
                std::ostream& log) {
    const JacobiParams kappa = config_kappa(cfg);
    kappa.require_nonnegative();
    const int d = cfg.d;
    const double tol_k = tol_or(cfg, "kernel", 1e-8);
    const double tol_stab = tol_or(cfg, "stability", 4.0);

    CsvFile csv(dir / "detail_kernels.csv",
                {"estimate", "n", "pair_id", "d_triangle", "lhs", "envelope", "ratio"});
    CheckCollector col;

    // correctness block: reproduction / annihilation / hat-sum consistency
    {
        const int nrep = 5;
        const OrthoBasis basis = build_basis(kappa, nrep);
        const Cubature cub = build_cubature(kappa, 3 * nrep + 4, 0.0);
        const auto xs = quasi_random_points(d, 4, cfg.seed + 3, 0.02);
        double worst_rep = 0.0, worst_ann = 0.0;
        for (int n = 1; n <= nrep; ++n) {
            for (const auto& u : basis.level(n)) {
                for (const auto& x : xs) {
                    double acc = 0.0;
                    for (std::size_t q = 0; q < cub.nodes.size(); ++q)
                        acc += cub.weights[q] * reproducing_kernel(x, cub.nodes[q], n, kappa) *
                               u.evaluate(cub.nodes[q].coords());
                    worst_rep = std::max(worst_rep, std::abs(acc - u.evaluate(x.coords())));
                }
            }
            for (int m = 0; m <= nrep; ++m) {
                if (m == n) continue;
                const auto& u = basis.level(m).front();
                for (const auto& x : xs) {
                    double acc = 0.0;
                    for (std::size_t q = 0; q < cub.nodes.size(); ++q)
                        acc += cub.weights[q] * reproducing_kernel(x, cub.nodes[q], n, kappa) *
                               u.evaluate(cub.nodes[q].coords());
                    worst_ann = std::max(worst_ann, std::abs(acc));
                }
            }
        }
        col.add("kernel_reproduces_level", worst_rep, tol_k);
        col.add("kernel_annihilates_other_levels", worst_ann, tol_k);

        double worst_sum = 0.0;
        const auto ys = quasi_random_points(d, 4, cfg.seed + 11, 0.02);
        for (int n = 2; n <= 6; n += 2) {
            const KernelEvaluator eval(KernelConfig(n, kappa));
            const CutoffFunction cutoff;
            for (const auto& x : xs)
                for (const auto& y : ys) {
                    double sum = 0.0;
                    for (int j = 0; j <= 2 * n; ++j) {
                        const double w = cutoff(static_cast<double>(j) / n);
                        if (w > 0.0) sum += w * reproducing_kernel(x, y, j, kappa);
                    }
                    worst_sum = std::max(worst_sum, std::abs(sum - eval(x, y)));
                }
        }
        col.add("localized_matches_hat_sum", worst_sum, tol_k);
    }

    // decay profiles
    std::vector<int> ns;
    {
        const int lo = cfg.n_lo > 0 ? cfg.n_lo : 8;
        const int hi = cfg.n_hi > 0 ? cfg.n_hi : 64;
        for (int n = std::max(lo, 2); n <= hi; n *= 2) ns.push_back(n);
        if (ns.empty()) throw std::invalid_argument("empty n range");
    }
    const auto rows = decay_profiles(kappa, ns, tol_or(cfg, "gamma", 0.0));
    std::map<std::string, std::map<int, double>> fitted;
    for (const auto& r : rows) {
        csv.write_row({r.estimate, std::to_string(r.n), std::to_string(r.pair_id),
                       format_double(r.dist), format_double(r.lhs), format_double(r.envelope),
                       format_double(r.ratio)});
        auto& slot = fitted[r.estimate][r.n];
        slot = std::max(slot, r.ratio);
    }
    for (const auto& [estimate, by_n] : fitted) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const auto& [n, c] : by_n) {
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        const double spread = (lo > 0.0 && std::isfinite(hi)) ? hi / lo
                                                              : std::numeric_limits<double>::infinity();
        col.add("stability_" + estimate, spread, tol_stab);
    }

    write_summary(dir, summary, col);
    log << "kernels: " << (col.all_pass ? "pass" : "FAIL") << "\n";
    return col.all_pass ? 0 : 1;
}

int run_lp(const RunConfig& cfg, const fs::path& dir, ordered_json& summary, std::ostream& log) {
    const int d = cfg.d;
    const double tol_slope = tol_or(cfg, "slope", 0.1);
    const double tol_stab = tol_or(cfg, "lp_stability", 2.0);

    std::vector<std::string> weight_specs = cfg.weights;
    if (weight_specs.empty()) {
        std::string zeros = "jacobi:";
        std::string mixed = "jacobi:1";
        std::string sins = "jacobi-sin:";
        for (int i = 0; i <= d; ++i) {
            zeros += (i ? ",0" : "0");
            sins += (i ? ",0" : "0");
            if (i) mixed += ",0.5";
        }
        weight_specs = {zeros, mixed, sins};
    }
    std::vector<DoublingWeightSpec> weights;
    for (const auto& s : weight_specs) weights.push_back(parse_weight(s, d));

    SweepConfig sweep;
    sweep.d = d;
    sweep.ns = suite_n_range(cfg, 2, 12);
    sweep.rs = {1, 2};
    sweep.ps = cfg.ps.empty()
                   ? std::vector<double>{1.0, 2.0, std::numeric_limits<double>::infinity()}
                   : cfg.ps;
    sweep.random_per_n = static_cast<int>(tol_or(cfg, "random_f", 50));
    sweep.seed = cfg.seed;

    CheckCollector col;
    CsvFile csv(dir / "detail_lp.csv", {"n", "r", "p", "factor", "weight", "f_id", "ratio"});
    const RatioReport report = bernstein_ratio_sweep(sweep, weights);
    for (const auto& r : report.rows)
        csv.write_row({std::to_string(r.n), std::to_string(r.r),
                       std::isinf(r.p) ? "inf" : format_double(r.p), r.factor, r.weight, r.f_id,
                       format_double(r.ratio)});
    double worst_slope = -std::numeric_limits<double>::infinity();
    bool all_finite = true;
    for (const auto& [key, slope] : report.slope) {
        worst_slope = std::max(worst_slope, slope);
        for (const auto& [n, sup] : report.sup_by_n.at(key))
            all_finite = all_finite && std::isfinite(sup);
    }
    col.add("ratio_sup_finite", all_finite ? 0.0 : 1.0, 0.5);
    col.add("loglog_slope", worst_slope, tol_slope);

    // d >= 3 domination: axis denominators 1 - x_l dominate the phi denominators
    if (d >= 3) {
        const JacobiParams kappa =
            weights.front().kappa() ? *weights.front().kappa() : JacobiParams::zero(d);
        Rng rng(cfg.seed + 17);
        double worst_gap = 0.0;
        const int n = std::min(6, sweep.ns.back());
        const OrthoBasis basis = build_basis(kappa, n);
        auto fs_dom = sweep_test_functions(basis, n, 10, rng, true);
        for (const auto& [id, f] : fs_dom) {
            for (int i = 1; i <= d; ++i)
                for (int ell = 1; ell <= d; ++ell) {
                    if (ell == i) continue;
                    const double lhs =
                        std::sqrt(form_value(FormKind::axis_diag_term(ell, i), f, f, kappa));
                    const double rhs =
                        phi_weighted_l2(f.partial(i), PhiFactor::diag(i), 1, kappa, 4 * n + 16);
                    worst_gap = std::max(worst_gap, (lhs - rhs) / std::max(rhs, 1e-300));
                }
        }
        col.add("domination_gap", worst_gap, 1e-8);
    }

    // Marcinkiewicz-Zygmund and shrink checks
    {
        CsvFile mzcsv(dir / "detail_mz.csv", {"n", "f_id", "lhs", "rhs", "c"});
        CsvFile shcsv(dir / "detail_shrink.csv", {"n", "f_id", "p", "ratio"});
        const DoublingWeightSpec& w = weights.front();
        const JacobiParams kappa = w.kappa() ? *w.kappa() : JacobiParams::zero(d);
        std::map<int, double> mz_by_n, sh_by_n;
        for (int n : {4, 8, 16}) {
            const OrthoBasis basis = build_basis(kappa, n);
            Rng rng(cfg.seed + n);
            auto fs_n = sweep_test_functions(basis, n, 3, rng, false);
            fs_n.emplace_back("const", Polynomial::constant(d, 1.0));
            fs_n.emplace_back("P_e1", special_p_e1(n, kappa));
            for (const auto& row : mz_check(n, 0.5, w, 2.0, fs_n)) {
                mzcsv.write_row({std::to_string(row.n), row.f_id, format_double(row.lhs),
                                 format_double(row.rhs), format_double(row.c)});
                auto& slot = mz_by_n[n];
                slot = std::max(slot, row.c);
            }
            for (double p : {2.0, std::numeric_limits<double>::infinity()}) {
                for (const auto& row : shrink_check(n, 0.25, w, p, fs_n)) {
                    shcsv.write_row({std::to_string(row.n), row.f_id,
                                     std::isinf(row.p) ? "inf" : format_double(row.p),
                                     format_double(row.ratio)});
                    auto& slot = sh_by_n[n];
                    slot = std::max(slot, row.ratio);
                }
            }
        }
        auto spread = [](const std::map<int, double>& by_n) {
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (const auto& [n, c] : by_n) {
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
            return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
        };
        col.add("mz_stability", spread(mz_by_n), tol_stab);
        col.add("shrink_stability", spread(sh_by_n), tol_stab);
    }

    // maximal-function norm equivalence
    {
        CsvFile mxcsv(dir / "detail_maximal.csv", {"n", "p", "weight", "f_id", "ratio"});
        std::map<std::string, std::map<int, double>> by_key;
        for (auto& w : weights) {
            estimate_doubling(w, 8192);
            const JacobiParams kappa = w.kappa() ? *w.kappa() : JacobiParams::zero(d);
            for (double p : {1.0, 2.0}) {
                const double beta = w.estimated_doubling_index / p + 1.0;
                for (int n : {8, 16, 32}) {
                    const OrthoBasis basis = build_basis(kappa, std::min(n, 8));
                    Rng rng(cfg.seed + n + static_cast<int>(10 * p));
                    auto fs_n = sweep_test_functions(basis, std::min(n, 8), 3, rng, false);
                    fs_n.emplace_back("P_e1", special_p_e1(std::min(n, 8), kappa));
                    const auto grid = metric_grid(d, 1.0 / (2.0 * n));
                    const Cubature cub = build_cubature(kappa, 2 * n + 16, 0.0);
                    const bool smooth =
                        w.kind() == DoublingWeightSpec::Kind::JacobiTimesSmooth;
                    for (const auto& [id, f] : fs_n) {
                        const auto fstar =
                            maximal_function_values(f, beta, n, cub.nodes, grid);
                        double num = 0.0, den = 0.0;
                        for (std::size_t q = 0; q < cub.nodes.size(); ++q) {
                            const double extra = smooth ? w.factor()(cub.nodes[q]) : 1.0;
                            num += cub.weights[q] * extra * std::pow(fstar[q], p);
                            den += cub.weights[q] * extra *
                                   std::pow(std::abs(f.evaluate(cub.nodes[q].coords())), p);
                        }
                        const double ratio = std::pow(num / den, 1.0 / p);
                        mxcsv.write_row({std::to_string(n), format_double(p), w.label(), id,
                                         format_double(ratio)});
                        auto& slot = by_key[w.label() + "|p" + format_double(p)][n];
                        slot = std::max(slot, ratio);
                    }
                }
            }
        }
        double worst = 0.0;
        for (const auto& [key, by_n] : by_key) {
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (const auto& [n, c] : by_n) {
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
            worst = std::max(worst, lo > 0.0 ? hi / lo
                                             : std::numeric_limits<double>::infinity());
        }
        col.add("maximal_stability", worst, tol_stab);
    }

    write_summary(dir, summary, col);
    log << "lp: " << (col.all_pass ? "pass" : "FAIL") << "\n";
    return col.all_pass ? 0 : 1;
}

}  // namespace

int render_reports(const std::string& out_dir, std::ostream& log) {
    const fs::path dir(out_dir);
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        return cells;
    };
    bool any = false;
    if (fs::exists(dir / "detail_kernels.csv")) {
        any = true;
        std::ifstream in(dir / "detail_kernels.csv");
        CsvFile out(dir / "tidy_kernels.csv", {"n", "d_triangle", "abs_L", "envelope", "ratio"});
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            const auto cells = split(line);
            if (cells.size() != 7 || cells[0] != "local1") continue;
            out.write_row({cells[1], cells[3], cells[4], cells[5], cells[6]});
        }
    }
    if (fs::exists(dir / "detail_lp.csv")) {
        any = true;
        std::ifstream in(dir / "detail_lp.csv");
        CsvFile out(dir / "tidy_lp.csv", {"n", "p", "factor", "weight", "ratio"});
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            const auto cells = split(line);
            if (cells.size() != 7) continue;
            out.write_row({cells[0], cells[2], cells[3], cells[4], cells[6]});
        }
    }
    if (!any) {
        log << "render: no detail files in " << out_dir << "\n";
        return 2;
    }
    return 0;
}

}  // namespace sbern::suites
