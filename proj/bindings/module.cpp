#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sbern/forms.hpp"
#include "sbern/kernels.hpp"
#include "sbern/lp.hpp"
#include "sbern/moments.hpp"
#include "sbern/ortho_basis.hpp"
#include "sbern/spectral.hpp"

namespace py = pybind11;
using namespace sbern;

namespace {

SimplexPoint to_point(const std::vector<double>& coords) { return SimplexPoint(coords); }

PhiFactor parse_factor(const std::string& which, int i, int j) {
    if (which == "diag") return PhiFactor::diag(i);
    if (which == "pair") return PhiFactor::pair(i, j);
    throw std::invalid_argument("factor must be 'diag' or 'pair'");
}

std::vector<FormKind> parse_form_set(const std::string& name, int ell) {
    if (name == "classical") return {FormKind::classical()};
    if (name == "radial") return {FormKind::radial()};
    if (name == "axis") return {FormKind::axis(ell)};
    throw std::invalid_argument("form set must be 'classical', 'radial' or 'axis'");
}

}  // namespace

PYBIND11_MODULE(simplex_bernstein, m) {
    m.doc() = "Bernstein inequalities on the simplex: orthogonal bases, spectral forms, "
              "localized kernels and Lp ratio checks";

    py::class_<JacobiParams>(m, "JacobiParams")
        .def(py::init<std::vector<double>>(), py::arg("kappa"))
        .def_property_readonly("dim", &JacobiParams::dim)
        .def_property_readonly("total", &JacobiParams::total)
        .def("b_kappa", &JacobiParams::b_kappa)
        .def("a_kappa", &JacobiParams::a_kappa)
        .def("lambda_n", &JacobiParams::lambda, py::arg("n"));

    py::class_<Polynomial>(m, "Polynomial")
        .def(py::init<int, int>(), py::arg("dim"), py::arg("degree_bound"))
        .def_static("constant", &Polynomial::constant)
        .def_property_readonly("dim", &Polynomial::dim)
        .def_property_readonly("degree", &Polynomial::degree)
        .def("coeffs", [](const Polynomial& p) { return p.coeffs(); })
        .def("set_coeff",
             [](Polynomial& p, const std::vector<int>& exponents, double value) {
                 p.coeff_at(exponents) = value;
             })
        .def("coeff", [](const Polynomial& p, const std::vector<int>& e) { return p.coeff_at(e); })
        .def("__call__",
             [](const Polynomial& p, const std::vector<double>& x) {
                 return p.evaluate(std::span<const double>(x.data(), x.size()));
             })
        .def("partial", &Polynomial::partial, py::arg("axis"))
        .def("diff_pair", &Polynomial::diff_pair, py::arg("i"), py::arg("j"))
        .def("euler", &Polynomial::euler)
        .def("__add__", [](const Polynomial& a, const Polynomial& b) { return a + b; })
        .def("__sub__", [](const Polynomial& a, const Polynomial& b) { return a - b; })
        .def("__mul__", [](const Polynomial& a, double s) { return a * s; })
        .def("__rmul__", [](const Polynomial& a, double s) { return a * s; });

    m.def("apply_spectral", &apply_spectral, py::arg("f"), py::arg("kappa"));
    m.def(
        "distance",
        [](const std::vector<double>& x, const std::vector<double>& y) {
            return distance(to_point(x), to_point(y));
        },
        "intrinsic distance on the simplex");
    m.def("dirichlet_moment", &dirichlet_moment, py::arg("exponents"), py::arg("kappa"));
    m.def("inner_product", &inner_product, py::arg("f"), py::arg("g"), py::arg("kappa"));
    m.def("special_p_e1", &special_p_e1, py::arg("n"), py::arg("kappa"));
    m.def("special_r_e1", &special_r_e1, py::arg("n"), py::arg("kappa"));

    m.def(
        "sharp_constant",
        [](const std::string& set, int n, const JacobiParams& kappa, int ell) {
            const SharpConstant sc = sharp_constant(parse_form_set(set, ell), n, kappa);
            return py::make_tuple(sc.lambda_max, sc.argmax, sc.multiplicity);
        },
        py::arg("form_set"), py::arg("n"), py::arg("kappa"), py::arg("ell") = 1,
        "largest Rayleigh quotient over Pi_n and its maximizer");

    m.def(
        "form_value",
        [](const std::string& set, const Polynomial& f, const Polynomial& g,
           const JacobiParams& kappa, int ell) {
            const auto kinds = parse_form_set(set, ell);
            double total = 0.0;
            for (const auto& k : kinds) total += form_value(k, f, g, kappa);
            return total;
        },
        py::arg("form_set"), py::arg("f"), py::arg("g"), py::arg("kappa"), py::arg("ell") = 1);

    m.def(
        "reproducing_kernel",
        [](const std::vector<double>& x, const std::vector<double>& y, int n,
           const JacobiParams& kappa) {
            return reproducing_kernel(to_point(x), to_point(y), n, kappa);
        },
        py::arg("x"), py::arg("y"), py::arg("n"), py::arg("kappa"));
    m.def(
        "localized_kernel",
        [](const std::vector<double>& x, const std::vector<double>& y, int n,
           const JacobiParams& kappa) {
            return localized_kernel(to_point(x), to_point(y), KernelConfig(n, kappa));
        },
        py::arg("x"), py::arg("y"), py::arg("n"), py::arg("kappa"));
    m.def(
        "wkn",
        [](const std::vector<double>& x, int n, const JacobiParams& kappa) {
            return wkn(to_point(x), n, kappa);
        },
        py::arg("x"), py::arg("n"), py::arg("kappa"));

    m.def(
        "phi",
        [](const std::vector<double>& x, const std::string& which, int i, int j) {
            return phi(to_point(x), parse_factor(which, i, j));
        },
        py::arg("x"), py::arg("which"), py::arg("i") = 1, py::arg("j") = 2);

    m.def(
        "lp_norm",
        [](const Polynomial& f, double p, const JacobiParams& kappa, int quad_degree,
           double grid_h) {
            LpNormSpec spec{p, DoublingWeightSpec::jacobi(kappa), quad_degree, grid_h};
            return lp_norm(f, spec);
        },
        py::arg("f"), py::arg("p"), py::arg("kappa"), py::arg("quad_degree") = 40,
        py::arg("grid_h") = 1.0 / 64.0,
        "||f||_{kappa,p}; pass p = float('inf') for the sup norm");
}
