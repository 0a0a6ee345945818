// simplex-bernstein: verification suites for Bernstein inequalities on the
// simplex (spectral identities, sharp L2 constants, localized kernels, Lp
// ratio sweeps). Writes summary.json and detail_*.csv tables.

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "sbern/suites.hpp"

namespace {

bool parse_range(const std::string& text, int& lo, int& hi) {
    const auto pos = text.find("..");
    try {
        if (pos == std::string::npos) {
            lo = hi = std::stoi(text);
        } else {
            const std::string a = text.substr(0, pos), b = text.substr(pos + 2);
            if (a.empty() || b.empty()) return false;
            lo = std::stoi(a);
            hi = std::stoi(b);
        }
    } catch (const std::exception&) {
        return false;
    }
    return lo >= 0 && hi >= lo;
}

std::vector<double> parse_p_list(const std::vector<std::string>& items) {
    std::vector<double> ps;
    for (const auto& s : items) {
        if (s == "inf" || s == "Inf" || s == "INF")
            ps.push_back(std::numeric_limits<double>::infinity());
        else
            ps.push_back(std::stod(s));
    }
    return ps;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bernstein inequalities on the simplex: verification toolkit"};
    app.require_subcommand(1);

    sbern::suites::RunConfig cfg;
    std::string n_range, render_dir;
    std::vector<std::string> p_items, tol_items;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--d", cfg.d, "simplex dimension")->check(CLI::Range(1, 6));
        sub->add_option("--n", n_range, "degree range A..B (or a single degree)");
        sub->add_option("--kappa", cfg.kappa, "Jacobi exponents, d+1 comma-separated reals")
            ->delimiter(',');
        sub->add_option("--p", p_items, "p values (reals or 'inf')")->delimiter(',');
        sub->add_option("--weight", cfg.weights,
                        "weight spec jacobi:<list> | jacobi-sin:<list> (repeatable)");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--tol", tol_items, "tolerance override NAME=VAL (repeatable)");
        sub->add_option("--cache", cfg.cache_dir, "ortho-basis cache directory");
    };

    CLI::App* spectral = app.add_subcommand("spectral", "operator and integral identities");
    spectral->add_option("--check", cfg.check, "restrict to one check (eigen|selfadj|cdk2|cor23|integral)");
    add_common(spectral);
    CLI::App* sharp = app.add_subcommand("sharp", "sharp constants and equality cases");
    add_common(sharp);
    CLI::App* kernels = app.add_subcommand("kernels", "kernel correctness and decay profiles");
    add_common(kernels);
    CLI::App* lp = app.add_subcommand("lp", "Lp ratio sweeps, MZ, shrink, maximal function");
    add_common(lp);
    CLI::App* render = app.add_subcommand("render", "re-emit tidy plot-ready tables");
    render->add_option("--out", render_dir, "report directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion") {
            return app.exit(e);
        }
        app.exit(e);
        return 2;
    }

    try {
        if (render->parsed()) {
            return sbern::suites::render_reports(render_dir, std::cout);
        }
        if (!n_range.empty() && !parse_range(n_range, cfg.n_lo, cfg.n_hi)) {
            std::cerr << "invalid --n range '" << n_range << "' (expected A..B)\n"
                      << app.help() << "\n";
            return 2;
        }
        cfg.ps = parse_p_list(p_items);
        for (const auto& item : tol_items) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) {
                std::cerr << "invalid --tol '" << item << "' (expected NAME=VAL)\n";
                return 2;
            }
            cfg.tol[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        }
        for (CLI::App* sub : {spectral, sharp, kernels, lp}) {
            if (sub->parsed()) {
                cfg.suite = sub->get_name();
                return sbern::suites::run_suite(cfg, std::cout);
            }
        }
        std::cerr << app.help() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
