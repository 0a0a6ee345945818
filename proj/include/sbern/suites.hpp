#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sbern/doubling.hpp"
#include "sbern/jacobi_params.hpp"
#include "sbern/polynomial.hpp"
#include "sbern/util.hpp"

namespace sbern::suites {

/// Parsed CLI configuration; values are validated against the module
/// preconditions before dispatch.
struct RunConfig {
    std::string suite;  // spectral | sharp | kernels | lp
    int d = 2;
    int n_lo = 0, n_hi = 0;          // 0,0 means suite default
    std::vector<double> kappa;       // empty means suite default (zeros)
    std::vector<double> ps;          // empty means {1, 2, inf}
    std::vector<std::string> weights;  // "jacobi:<list>" or "jacobi-sin:<list>"
    std::uint64_t seed = 1;
    std::string out_dir = "reports";
    std::map<std::string, double> tol;  // name -> value overrides
    std::string check;                  // optional spectral filter (selfadj|cdk2|cor23|integral)
    std::string cache_dir;              // optional ortho-basis cache
};

/// Executes a suite, writes summary.json and detail_*.csv under out_dir.
/// Returns 0 when every hard tolerance passes, 1 otherwise.
int run_suite(const RunConfig& cfg, std::ostream& log);

/// Re-emits tidy plot-ready CSV tables from an existing report directory.
/// Returns 0 on success, 2 if inputs are missing.
int render_reports(const std::string& out_dir, std::ostream& log);

/// Parse "jacobi:0,0.5,1" / "jacobi-sin:0,0,0" into a weight spec.
DoublingWeightSpec parse_weight(const std::string& spec, int d);

/// Max over orthonormal basis elements u (levels 1..nmax) of
/// max-sample |D_k u + lambda_n u| / ||u||_inf.
double eigenfunction_residual(const JacobiParams& kappa, int nmax, int sample_count,
                              std::uint64_t seed);

/// Deterministic random polynomial with uniform [-1,1] monomial coefficients.
Polynomial random_polynomial(int dim, int degree, Rng& rng);

/// %.12e rendering used by every report file.
std::string format_double(double v);

}  // namespace sbern::suites
