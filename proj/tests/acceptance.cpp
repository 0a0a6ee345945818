// Acceptance suite: runs the eight hard gates of the toolkit end to end and
// prints one PASS/FAIL line per criterion. Exits nonzero if any gate fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sbern/forms.hpp"
#include "sbern/kernels.hpp"
#include "sbern/lp.hpp"
#include "sbern/moments.hpp"
#include "sbern/ortho_basis.hpp"
#include "sbern/spectral.hpp"
#include "sbern/suites.hpp"

using namespace sbern;
namespace fs = std::filesystem;

namespace {

struct Gate {
    int failures = 0;

    bool report(int id, const std::string& what, bool ok, const std::string& detail,
                double seconds) {
        std::printf("[%s] criterion %d: %s (%s, %.1fs)\n", ok ? "PASS" : "FAIL", id, what.c_str(),
                    detail.c_str(), seconds);
        std::fflush(stdout);
        if (!ok) ++failures;
        return ok;
    }
};

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

std::vector<JacobiParams> kappa_grid_subsample(int d) {
    // deterministic subsample of {0, 0.5, 1, 2.7}^{d+1}
    const double g[4] = {0.0, 0.5, 1.0, 2.7};
    std::vector<JacobiParams> out;
    out.push_back(JacobiParams::zero(d));
    out.emplace_back(std::vector<double>(d + 1, 0.5));
    out.emplace_back(std::vector<double>(d + 1, 2.7));
    for (int shift = 0; shift < 2; ++shift) {
        std::vector<double> k(d + 1);
        for (int i = 0; i <= d; ++i) k[i] = g[(i + shift + 1) % 4];
        out.emplace_back(k);
    }
    return out;
}

std::string fmt(double v) { return suites::format_double(v); }

// ---- criterion 1: eigenfunction identity -------------------------------
void criterion1(Gate& gate) {
    Timer timer;
    double worst = 0.0;
    int combos = 0;
    for (int d : {2, 3}) {
        for (const auto& kappa : kappa_grid_subsample(d)) {
            worst = std::max(worst, suites::eigenfunction_residual(kappa, 6, 100, 17));
            ++combos;
        }
    }
    const double secs = timer.seconds();
    std::ostringstream detail;
    detail << combos << " kappa combos, max residual " << fmt(worst);
    gate.report(1, "eigenfunction identity D_k u = -n(n+|k|+d) u", worst <= 1e-8 && secs <= 60.0,
                detail.str(), secs);
}

// ---- criterion 2: decomposition identities ------------------------------
void criterion2(Gate& gate) {
    Timer timer;
    double worst = 0.0;
    Rng rng(29);
    for (int d : {2, 3}) {
        const auto samples = quasi_random_points(d, 30, 13, 0.06);
        std::vector<JacobiParams> ks;
        ks.push_back(JacobiParams(std::vector<double>(d + 1, 1.0)));
        {
            std::vector<double> mixed(d + 1, 0.5);
            mixed[0] = 0.0;
            mixed[d] = 2.7;
            ks.emplace_back(mixed);
        }
        for (const auto& kappa : ks) {
            for (int trial = 0; trial < 3; ++trial) {
                const Polynomial f = suites::random_polynomial(d, 6, rng);
                const Polynomial g = suites::random_polynomial(d, 6, rng);
                worst = std::max(worst,
                                 verify_operator_identity(OperatorIdentity::SelfAdj, f, kappa,
                                                          samples));
                worst = std::max(worst, verify_operator_identity(OperatorIdentity::CDk2, f, kappa,
                                                                 samples));
                for (int ell = 1; ell <= d; ++ell)
                    worst = std::max(worst, verify_operator_identity(OperatorIdentity::Cor23, f,
                                                                     kappa, samples, ell));
                worst = std::max(worst,
                                 verify_integral_identity(IntegralIdentity::AdjInt, f, g, kappa));
                worst = std::max(
                    worst, verify_integral_identity(IntegralIdentity::SelfAdj2, f, g, kappa));
                for (int ell = 1; ell <= d; ++ell)
                    worst = std::max(worst, verify_integral_identity(IntegralIdentity::SelfAdj3,
                                                                     f, g, kappa, ell));
            }
        }
    }
    std::ostringstream detail;
    detail << "max relative residual " << fmt(worst);
    gate.report(2, "operator and integral decompositions (incl. corrected eq:self-adj3)",
                worst <= 1e-8, detail.str(), timer.seconds());
}

// ---- criterion 3: sharpness ---------------------------------------------
void criterion3(Gate& gate) {
    Timer timer;
    double worst_rel = 0.0, worst_proj = 0.0, worst_eq = 0.0;
    for (int d : {2, 3}) {
        std::vector<JacobiParams> ks;
        ks.push_back(JacobiParams::zero(d));
        {
            std::vector<double> k(d + 1, 0.5);
            k[0] = 1.0;
            k[d] = 2.7;
            ks.emplace_back(k);
        }
        for (const auto& kappa : ks) {
            const OrthoBasis basis = build_basis(kappa, 6);
            std::vector<std::vector<FormKind>> sets{{FormKind::classical()},
                                                    {FormKind::radial()}};
            for (int ell = 1; ell <= d; ++ell) sets.push_back({FormKind::axis(ell)});
            for (int n = 1; n <= 6; ++n) {
                const double lam = kappa.lambda(n);
                for (const auto& kinds : sets) {
                    const SharpConstant sc = sharp_constant(kinds, n, kappa, &basis);
                    worst_rel = std::max(worst_rel, std::abs(sc.lambda_max - lam) / lam);
                    worst_proj = std::max(worst_proj, sc.proj_below_norm);
                }
                for (const auto& row : equality_case_report(n, kappa))
                    worst_eq = std::max(worst_eq, row.rel_err);
            }
        }
    }
    // hand-checkable anchor: d=2, kappa=0, n=1
    const JacobiParams k0 = JacobiParams::zero(2);
    const Polynomial f = special_p_e1(1, k0);
    const double anchor_form = form_value(FormKind::classical(), f, f, k0);
    const double anchor_norm2 = inner_product(f, f, k0);
    const bool anchor_ok = std::abs(anchor_form - 1.5) <= 1e-10 &&
                           std::abs(anchor_norm2 - 0.5) <= 1e-10 &&
                           std::abs(anchor_form / anchor_norm2 - 3.0) <= 1e-8;
    std::ostringstream detail;
    detail << "lambda rel err " << fmt(worst_rel) << ", proj " << fmt(worst_proj)
           << ", equality rel err " << fmt(worst_eq) << ", anchor 3/2 over 1/2 "
           << (anchor_ok ? "ok" : "BAD");
    gate.report(3, "sharp constants lambda_max = n(n+|k|+d) with V_n maximizers",
                worst_rel <= 1e-8 && worst_proj <= 1e-6 && worst_eq <= 1e-8 && anchor_ok,
                detail.str(), timer.seconds());
}

// ---- criterion 4: kernel correctness ------------------------------------
void criterion4(Gate& gate) {
    Timer timer;
    double worst_rep = 0.0, worst_ann = 0.0, worst_sum = 0.0;
    const int d = 2;
    for (const auto& ks : {std::vector<double>{0.0, 0.0, 0.0}, std::vector<double>{0.5, 0.0, 1.0}}) {
        const JacobiParams kappa(ks);
        const OrthoBasis basis = build_basis(kappa, 5);
        const Cubature cub = build_cubature(kappa, 19, 0.0);
        const auto xs = quasi_random_points(d, 4, 3, 0.02);
        for (int n = 1; n <= 5; ++n) {
            for (const auto& u : basis.level(n)) {
                for (const auto& x : xs) {
                    double acc = 0.0;
                    for (std::size_t q = 0; q < cub.nodes.size(); ++q)
                        acc += cub.weights[q] * reproducing_kernel(x, cub.nodes[q], n, kappa) *
                               u.evaluate(cub.nodes[q].coords());
                    worst_rep = std::max(worst_rep, std::abs(acc - u.evaluate(x.coords())));
                }
            }
            for (int m = 0; m <= 5; ++m) {
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
        const CutoffFunction cutoff;
        const auto ys = quasi_random_points(d, 3, 5, 0.02);
        const auto xs2 = quasi_random_points(d, 3, 4, 0.02);
        for (int n = 2; n <= 6; n += 2) {
            const KernelEvaluator eval(KernelConfig(n, kappa));
            for (const auto& x : xs2)
                for (const auto& y : ys) {
                    double hat = 0.0;
                    for (int j = 0; j <= 2 * n; ++j) {
                        const double w = cutoff(static_cast<double>(j) / n);
                        if (w > 0.0) hat += w * reproducing_kernel(x, y, j, kappa);
                    }
                    worst_sum = std::max(worst_sum, std::abs(hat - eval(x, y)));
                }
        }
    }
    std::ostringstream detail;
    detail << "reproduce " << fmt(worst_rep) << ", annihilate " << fmt(worst_ann)
           << ", hat-sum " << fmt(worst_sum);
    gate.report(4, "reproducing kernel correctness and localized consistency",
                worst_rep <= 1e-8 && worst_ann <= 1e-8 && worst_sum <= 1e-8, detail.str(),
                timer.seconds());
}

// ---- criterion 5: decay estimates ---------------------------------------
void criterion5(Gate& gate) {
    Timer timer;
    bool ok = true;
    std::ostringstream detail;
    const std::vector<int> ns{8, 16, 32, 64};
    for (const auto& ks : {std::vector<double>{0.0, 0.0, 0.0}, std::vector<double>{1.0, 1.0, 1.0}}) {
        const JacobiParams kappa(ks);
        const auto rows = decay_profiles(kappa, ns, 0.0);  // gamma = 2|k|+2d+4
        std::map<std::string, std::map<int, double>> fitted;
        for (const auto& r : rows) {
            auto& slot = fitted[r.estimate][r.n];
            slot = std::max(slot, r.ratio);
        }
        for (const auto& [estimate, by_n] : fitted) {
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (const auto& [n, c] : by_n) {
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
            const bool stable = std::isfinite(hi) && lo > 0.0 && hi / lo <= 4.0;
            if (!stable) {
                ok = false;
                detail << estimate << " spread " << fmt(lo > 0 ? hi / lo : -1.0) << "; ";
            }
        }
    }
    const double secs = timer.seconds();
    if (secs > 600.0) ok = false;
    if (ok) detail << "all fitted constants n-stable (max/min <= 4)";
    gate.report(5, "localization decay estimates over n in {8,16,32,64}", ok, detail.str(), secs);
}

// ---- criterion 6: Lp Bernstein sweep -------------------------------------
void criterion6(Gate& gate) {
    Timer timer;
    bool ok = true;
    std::ostringstream detail;
    double worst_slope = -1e300;
    for (int d : {2, 3}) {
        SweepConfig cfg;
        cfg.d = d;
        cfg.ns = {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
        cfg.rs = {1, 2};
        cfg.ps = {1.0, 2.0, std::numeric_limits<double>::infinity()};
        cfg.random_per_n = 50;
        cfg.seed = 2024;
        std::vector<DoublingWeightSpec> weights;
        {
            std::string zeros = "jacobi:0", mixed = "jacobi:1", sins = "jacobi-sin:0";
            for (int i = 1; i <= d; ++i) {
                zeros += ",0";
                mixed += ",0.5";
                sins += ",0";
            }
            weights.push_back(suites::parse_weight(zeros, d));
            weights.push_back(suites::parse_weight(mixed, d));
            weights.push_back(suites::parse_weight(sins, d));
        }
        const RatioReport report = bernstein_ratio_sweep(cfg, weights);
        for (const auto& row : report.rows)
            if (!std::isfinite(row.ratio) || row.ratio < 0.0) ok = false;
        for (const auto& [key, slope] : report.slope) {
            worst_slope = std::max(worst_slope, slope);
            if (slope > 0.1) {
                ok = false;
                detail << key << " slope " << fmt(slope) << "; ";
            }
        }
    }
    // d = 3 domination on every tested f
    {
        const int d = 3, n = 6;
        double worst_gap = -1e300;
        for (const auto& ks : {std::vector<double>{0.0, 0.0, 0.0, 0.0},
                               std::vector<double>{1.0, 0.5, 0.5, 0.5}}) {
            const JacobiParams kappa(ks);
            const OrthoBasis basis = build_basis(kappa, n);
            Rng rng(2024);
            const auto fs = sweep_test_functions(basis, n, 50, rng, true);
            for (const auto& [id, f] : fs) {
                for (int i = 1; i <= d; ++i)
                    for (int ell = 1; ell <= d; ++ell) {
                        if (ell == i) continue;
                        const double lhs = std::sqrt(
                            form_value(FormKind::axis_diag_term(ell, i), f, f, kappa));
                        const double rhs = phi_weighted_l2(f.partial(i), PhiFactor::diag(i), 1,
                                                           kappa, 4 * n + 16);
                        worst_gap = std::max(worst_gap, (lhs - rhs) / std::max(rhs, 1e-300));
                    }
            }
        }
        if (worst_gap > 1e-8) {
            ok = false;
            detail << "domination gap " << fmt(worst_gap) << "; ";
        }
    }
    if (ok) detail << "slopes <= 0.1 (worst " << fmt(worst_slope) << "), domination holds";
    gate.report(6, "Lp Bernstein ratios for doubling weights", ok, detail.str(), timer.seconds());
}

// ---- criterion 7: sampling lemmas ----------------------------------------
void criterion7(Gate& gate) {
    Timer timer;
    bool ok = true;
    std::ostringstream detail;
    const int d = 2;
    DoublingWeightSpec w = DoublingWeightSpec::jacobi(JacobiParams::zero(d), "jacobi:0,0,0");

    std::map<int, double> mz_by_n, sh_by_n;
    for (int n : {4, 8, 16}) {
        const JacobiParams kappa = JacobiParams::zero(d);
        const OrthoBasis basis = build_basis(kappa, n);
        Rng rng(99 + n);
        auto fs = sweep_test_functions(basis, n, 3, rng, false);
        fs.emplace_back("const", Polynomial::constant(d, 1.0));
        fs.emplace_back("P_e1", special_p_e1(n, kappa));
        for (const auto& row : mz_check(n, 0.5, w, 2.0, fs)) {
            auto& slot = mz_by_n[n];
            slot = std::max(slot, row.c);
        }
        for (const auto& row : shrink_check(n, 0.25, w, 2.0, fs)) {
            auto& slot = sh_by_n[n];
            slot = std::max(slot, row.ratio);
        }
        for (const auto& row :
             shrink_check(n, 0.25, w, std::numeric_limits<double>::infinity(), fs)) {
            auto& slot = sh_by_n[n];
            slot = std::max(slot, row.ratio);
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
    const double mz_spread = spread(mz_by_n), sh_spread = spread(sh_by_n);
    if (mz_spread > 2.0 || sh_spread > 2.0) ok = false;

    // maximal function equivalence with beta = index/p + 1
    estimate_doubling(w, 8192);
    double mx_spread = 0.0;
    for (double p : {1.0, 2.0}) {
        const double beta = w.estimated_doubling_index / p + 1.0;
        std::map<int, double> by_n;
        for (int n : {8, 16, 32}) {
            const JacobiParams kappa = JacobiParams::zero(d);
            const OrthoBasis basis = build_basis(kappa, 8);
            Rng rng(7 + n);
            auto fs = sweep_test_functions(basis, 8, 3, rng, false);
            fs.emplace_back("P_e1", special_p_e1(8, kappa));
            const auto grid = metric_grid(d, 1.0 / (2.0 * n));
            const Cubature cub = build_cubature(kappa, 2 * n + 16, 0.0);
            for (const auto& [id, f] : fs) {
                const auto fstar = maximal_function_values(f, beta, n, cub.nodes, grid);
                double num = 0.0, den = 0.0;
                for (std::size_t q = 0; q < cub.nodes.size(); ++q) {
                    num += cub.weights[q] * std::pow(fstar[q], p);
                    den += cub.weights[q] *
                           std::pow(std::abs(f.evaluate(cub.nodes[q].coords())), p);
                }
                const double ratio = std::pow(num / den, 1.0 / p);
                if (ratio < 1.0 - 1e-9) ok = false;  // f* dominates f pointwise
                auto& slot = by_n[n];
                slot = std::max(slot, ratio);
            }
        }
        mx_spread = std::max(mx_spread, spread(by_n));
    }
    if (mx_spread > 2.0) ok = false;
    detail << "MZ spread " << fmt(mz_spread) << ", shrink spread " << fmt(sh_spread)
           << ", maximal spread " << fmt(mx_spread);
    gate.report(7, "MZ / shrink / maximal-function sampling lemmas", ok, detail.str(),
                timer.seconds());
}

// ---- criterion 8: determinism --------------------------------------------
std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion8(Gate& gate, const std::string& cli, const fs::path& workdir) {
    Timer timer;
    bool ok = true;
    std::ostringstream detail;
    if (cli.empty()) {
        gate.report(8, "determinism (CLI reruns byte-identical)", false, "no --cli given", 0.0);
        return;
    }
    struct Job {
        std::string name;
        std::string args;
        std::vector<std::string> files;
    };
    const std::vector<Job> jobs{
        {"sharp", "sharp --d 2 --kappa 0,0,0 --n 1..4 --seed 11",
         {"summary.json", "detail_sharp.csv", "detail_equality.csv"}},
        {"spectral", "spectral --d 2 --kappa 1,1,1 --n 1..5 --seed 11",
         {"summary.json", "detail_spectral.csv"}},
        {"kernels", "kernels --d 2 --kappa 0,0,0 --n 8..16 --seed 11",
         {"summary.json", "detail_kernels.csv"}},
    };
    for (const auto& job : jobs) {
        const fs::path d1 = workdir / (job.name + "_run1");
        const fs::path d2 = workdir / (job.name + "_run2");
        fs::remove_all(d1);
        fs::remove_all(d2);
        for (const fs::path& out : {d1, d2}) {
            const std::string cmd =
                cli + " " + job.args + " --out " + out.string() + " > /dev/null 2>&1";
            const int status = std::system(cmd.c_str());
            if (WEXITSTATUS(status) != 0) {
                ok = false;
                detail << job.name << " exited " << WEXITSTATUS(status) << "; ";
            }
        }
        for (const auto& f : job.files) {
            const std::string a = slurp(d1 / f), b = slurp(d2 / f);
            if (a.empty() || a != b) {
                ok = false;
                detail << job.name << "/" << f << " differs; ";
            }
        }
    }
    if (ok) detail << "3 suites, byte-identical reports";
    gate.report(8, "determinism (CLI reruns byte-identical)", ok, detail.str(), timer.seconds());
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    fs::path workdir = "acceptance_tmp";
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--cli" && i + 1 < argc) cli = argv[++i];
        else if (arg == "--workdir" && i + 1 < argc) workdir = argv[++i];
        else if (arg == "--only" && i + 1 < argc) only.push_back(std::atoi(argv[++i]));
    }
    fs::create_directories(workdir);
    auto wanted = [&](int id) {
        return only.empty() || std::find(only.begin(), only.end(), id) != only.end();
    };
    Gate gate;
    if (wanted(1)) criterion1(gate);
    if (wanted(2)) criterion2(gate);
    if (wanted(3)) criterion3(gate);
    if (wanted(4)) criterion4(gate);
    if (wanted(5)) criterion5(gate);
    if (wanted(6)) criterion6(gate);
    if (wanted(7)) criterion7(gate);
    if (wanted(8)) criterion8(gate, cli, workdir);
    if (gate.failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", gate.failures);
    return 1;
}
