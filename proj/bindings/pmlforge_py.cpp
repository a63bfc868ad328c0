// Python bindings for the design pipeline: windows, minimax solutions,
// grid conversions, composite designs, sweeps, and validation.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pmlforge/balance.hpp"
#include "pmlforge/composite.hpp"
#include "pmlforge/design_io.hpp"
#include "pmlforge/validation.hpp"

namespace py = pybind11;
using namespace pmlforge;

PYBIND11_MODULE(_core, m) {
    m.doc() = "discrete absorbing layer design";

    py::register_exception<PoleError>(m, "PoleError");
    py::register_exception<ConvergenceError>(m, "ConvergenceError");
    py::register_exception<BreakdownError>(m, "BreakdownError");
    py::register_exception<DesignIOError>(m, "DesignIOError");

    py::class_<Polynomial>(m, "Polynomial")
        .def(py::init<std::vector<Complex>>(), py::arg("coeffs"))
        .def_static("from_roots", &Polynomial::from_roots, py::arg("lead"),
                    py::arg("roots"))
        .def_property_readonly("degree", &Polynomial::degree)
        .def_property_readonly("coeffs", &Polynomial::coeffs)
        .def_property_readonly("has_root_form", &Polynomial::has_root_form)
        .def_property_readonly(
            "roots", [](const Polynomial& p) { return p.has_root_form() ? p.roots() : p.compute_roots(); })
        .def("__call__", &Polynomial::eval, py::arg("s"));

    py::class_<OddEvenRational>(m, "OddEvenRational")
        .def(py::init<Polynomial, Polynomial>(), py::arg("p_tilde"), py::arg("q_tilde"))
        .def_readonly("p_tilde", &OddEvenRational::p_tilde)
        .def_readonly("q_tilde", &OddEvenRational::q_tilde)
        .def("__call__", &OddEvenRational::eval, py::arg("s"));

    py::class_<SpectralWindow>(m, "SpectralWindow")
        .def(py::init([](double l1, double l2, double l3) {
                 SpectralWindow w{l1, l2, l3};
                 w.validate();
                 return w;
             }),
             py::arg("lambda1"), py::arg("lambda2"), py::arg("lambda3"))
        .def_readonly("lambda1", &SpectralWindow::lambda1)
        .def_readonly("lambda2", &SpectralWindow::lambda2)
        .def_readonly("lambda3", &SpectralWindow::lambda3);

    py::class_<MinimaxSolution>(m, "MinimaxSolution")
        .def_readonly("t", &MinimaxSolution::t)
        .def_readonly("max_ratio", &MinimaxSolution::max_ratio);

    py::class_<FEMesh>(m, "FEMesh")
        .def(py::init([](std::vector<Complex> lengths) {
                 return FEMesh{std::move(lengths)};
             }),
             py::arg("lengths"))
        .def_readonly("lengths", &FEMesh::lengths);

    py::class_<FDGrid>(m, "FDGrid")
        .def(py::init([](std::vector<Complex> hhat, std::vector<Complex> h,
                         bool terminal_unbounded) {
                 return FDGrid{std::move(hhat), std::move(h), terminal_unbounded};
             }),
             py::arg("hhat"), py::arg("h"), py::arg("terminal_unbounded") = false)
        .def_readonly("hhat", &FDGrid::hhat)
        .def_readonly("h", &FDGrid::h)
        .def_readonly("terminal_unbounded", &FDGrid::terminal_unbounded);

    py::class_<AchievedMaxima>(m, "AchievedMaxima")
        .def_readonly("max_reflection_evanescent",
                      &AchievedMaxima::max_reflection_evanescent)
        .def_readonly("max_reflection_propagative",
                      &AchievedMaxima::max_reflection_propagative)
        .def_readonly("max_ntd_rel_error_evanescent",
                      &AchievedMaxima::max_ntd_rel_error_evanescent)
        .def_readonly("max_ntd_rel_error_propagative",
                      &AchievedMaxima::max_ntd_rel_error_propagative);

    py::class_<LayerDesign>(m, "LayerDesign")
        .def_readonly("window", &LayerDesign::window)
        .def_readonly("k_total", &LayerDesign::k_total)
        .def_readonly("split_l", &LayerDesign::split_l)
        .def_readonly("tail_power", &LayerDesign::tail_power)
        .def_readonly("balanced", &LayerDesign::balanced)
        .def_readonly("t_e", &LayerDesign::t_e)
        .def_readonly("t_p", &LayerDesign::t_p)
        .def_readonly("h2", &LayerDesign::h2)
        .def_readonly("fe_segment", &LayerDesign::fe_segment)
        .def_readonly("fd_tail", &LayerDesign::fd_tail)
        .def_readonly("achieved", &LayerDesign::achieved);

    py::class_<IntervalMaxima>(m, "IntervalMaxima")
        .def_readonly("max_reflection", &IntervalMaxima::max_reflection)
        .def_readonly("max_rel_error", &IntervalMaxima::max_rel_error);

    py::class_<HalfspaceErrorSample>(m, "HalfspaceErrorSample")
        .def_readonly("lambda_", &HalfspaceErrorSample::lambda)
        .def_readonly("rel_error", &HalfspaceErrorSample::rel_error)
        .def_readonly("reflection_modulus", &HalfspaceErrorSample::reflection_modulus)
        .def_readonly("flag_pole", &HalfspaceErrorSample::flag_pole);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("samples", &SweepResult::samples)
        .def_readonly("propagative", &SweepResult::propagative)
        .def_readonly("evanescent", &SweepResult::evanescent);

    py::class_<GroupResult>(m, "GroupResult")
        .def_readonly("name", &GroupResult::name)
        .def_readonly("pass_", &GroupResult::pass)
        .def_readonly("detail", &GroupResult::detail);

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("groups", &ValidationReport::groups)
        .def("all_pass", &ValidationReport::all_pass);

    m.def("solve_real", &solve_real, py::arg("a"), py::arg("b"), py::arg("k"));
    m.def("solve_imaginary", &solve_imaginary, py::arg("a"), py::arg("b"), py::arg("k"));

    m.def("grid_to_rational", &grid_to_rational, py::arg("grid"));
    m.def("rational_to_grid", &rational_to_grid, py::arg("f"));
    m.def("fe_to_fd", &fe_to_fd, py::arg("mesh"));
    m.def("fd_to_fe", &fd_to_fe, py::arg("grid"));
    m.def("mesh_polynomial", &mesh_polynomial, py::arg("mesh"));
    m.def("mesh_from_polynomial", &mesh_from_polynomial, py::arg("t"));
    m.def("split_odd_even", &split_odd_even, py::arg("t"));
    m.def("combine_odd_even", &combine_odd_even, py::arg("f"));

    m.def("build_composite", &build_composite, py::arg("window"), py::arg("k_total"),
          py::arg("split_l"), py::arg("tail_power") = 2);
    m.def(
        "design_balanced",
        [](const SpectralWindow& w, int k_total, int tail_power) {
            return design_balanced(w, k_total, tail_power).first;
        },
        py::arg("window"), py::arg("k_total"), py::arg("tail_power") = 2);
    m.def("total_h", &total_h, py::arg("design"));
    m.def("end_to_end_reflection", &end_to_end_reflection, py::arg("design"),
          py::arg("s"));
    m.def("reflection", &reflection, py::arg("h"), py::arg("s"));
    m.def("newman_ntd", &newman_ntd, py::arg("h"), py::arg("lambda"));

    m.def("halfspace_error_sweep", &halfspace_error_sweep, py::arg("h"),
          py::arg("window"), py::arg("n_samples") = 2001);

    m.def("save_design", &save_design, py::arg("design"), py::arg("path"));
    m.def("load_design", &load_design, py::arg("path"));
    m.def("run_validation", &run_validation, py::arg("design"));
}
