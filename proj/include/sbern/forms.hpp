#pragma once

#include <string>
#include <vector>

#include "sbern/geometry.hpp"
#include "sbern/jacobi_params.hpp"
#include "sbern/ortho_basis.hpp"
#include "sbern/polynomial.hpp"

namespace sbern {

/// Positive semi-definite bilinear forms on Pi_n built from the three
/// symmetric decompositions of the spectral operator, plus their single-term
/// restrictions.
struct FormKind {
    enum class Tag {
        Classical,       // sum_i x_i(1-|x|) d_i f d_i g + sum_{i<j} x_i x_j d_ij f d_ij g
        Radial,          // (1-|x|) Ef Eg / |x| + sum_{i<j} x_i x_j d_ij f d_ij g / |x|
        Axis,            // ell: x_l TfTg/(1-x_l) + sum_{i!=l} x_i(1-|x|) d_i f d_i g /(1-x_l) + pairs
        DiagTerm,        // i
        PairTerm,        // (i, j)
        RadialTerm,      //
        RadialPairTerm,  // (i, j)
        AxisMainTerm,    // ell
        AxisDiagTerm,    // (ell, i)
        AxisPairTerm,    // (ell, i, j)
    };
    Tag tag;
    int i = 0, j = 0, ell = 0;

    static FormKind classical() { return {Tag::Classical}; }
    static FormKind radial() { return {Tag::Radial}; }
    static FormKind axis(int ell) { return {Tag::Axis, 0, 0, ell}; }
    static FormKind diag_term(int i) { return {Tag::DiagTerm, i}; }
    static FormKind pair_term(int i, int j) { return {Tag::PairTerm, i, j}; }
    static FormKind radial_term() { return {Tag::RadialTerm}; }
    static FormKind radial_pair_term(int i, int j) { return {Tag::RadialPairTerm, i, j}; }
    static FormKind axis_main_term(int ell) { return {Tag::AxisMainTerm, 0, 0, ell}; }
    static FormKind axis_diag_term(int ell, int i) { return {Tag::AxisDiagTerm, i, 0, ell}; }
    static FormKind axis_pair_term(int ell, int i, int j) { return {Tag::AxisPairTerm, i, j, ell}; }
};

/// Expand a full decomposition into its single terms (single terms expand to
/// themselves).
std::vector<FormKind> expand_form_set(const FormKind& kind, int d);

/// Symmetric bilinear form value B(f,g); exact Gauss–Jacobi cubature (the
/// 1/|x| and 1/(1-x_ell) factors are absorbed into radial/axis rules).
double form_value(const FormKind& kind, const Polynomial& f, const Polynomial& g,
                  const JacobiParams& kappa);

enum class OperatorIdentity { SelfAdj, CDk2, Cor23 };

/// Evaluates the named symmetric decomposition pointwise (derivatives of
/// W_kappa expanded analytically) against apply_spectral; returns the max
/// relative residual over the samples. Samples must be interior.
double verify_operator_identity(OperatorIdentity which, const Polynomial& f,
                                const JacobiParams& kappa,
                                const std::vector<SimplexPoint>& samples, int ell = 1);

enum class IntegralIdentity { AdjInt, SelfAdj2, SelfAdj3 };

/// Compares -<D_k f, g>_k (exact moments) with the stated sum of form values;
/// returns |LHS-RHS|/(1+|LHS|).
double verify_integral_identity(IntegralIdentity which, const Polynomial& f, const Polynomial& g,
                                const JacobiParams& kappa, int ell = 1);

struct SharpConstant {
    double lambda_max = 0.0;
    Polynomial argmax;
    int multiplicity = 1;           // eigenvalues within 1e-8 rel of the top
    double proj_below_norm = 0.0;   // L2 norm of argmax projected onto Pi_{n-1}
};

/// Largest Rayleigh quotient of sum(kinds) over Pi_n in the orthonormal basis
/// (the L2 Gram is the identity), with the maximizing polynomial.
SharpConstant sharp_constant(const std::vector<FormKind>& kinds, int n, const JacobiParams& kappa,
                             const OrthoBasis* prebuilt = nullptr);

struct EqualityCaseRow {
    std::string label;
    double quotient = 0.0;
    double lambda_n = 0.0;
    double rel_err = 0.0;
};

/// Rayleigh quotients of P_{e1} and R_{e1} under the four single-form
/// restrictions that the decompositions make sharp; each must equal
/// lambda_n = n(n+|k|+d).
std::vector<EqualityCaseRow> equality_case_report(int n, const JacobiParams& kappa);

}  // namespace sbern
