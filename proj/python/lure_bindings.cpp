#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lure/baselines.hpp"
#include "lure/errors.hpp"
#include "lure/gamma.hpp"
#include "lure/problems.hpp"
#include "lure/solver.hpp"

namespace py = pybind11;
using namespace lure;

namespace {

SolveOptions make_options(std::optional<double> gamma, std::optional<GammaBracket> bracket, double tol, int max_iter,
                          double rank_tol) {
  SolveOptions o;
  o.gamma = gamma;
  o.gamma_bracket = bracket;
  o.sda.tol = tol;
  o.sda.max_iter = max_iter;
  o.rank_tol = rank_tol;
  return o;
}

}  // namespace

PYBIND11_MODULE(pylure, m) {
  m.doc() = "Lur'e equation solver by structured doubling";

  auto base = py::register_exception<Error>(m, "LureError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
  py::register_exception<SingularIGH>(m, "SingularIGH", base.ptr());
  py::register_exception<GammaUnusable>(m, "GammaUnusable", base.ptr());
  py::register_exception<AllSingular>(m, "AllSingular", base.ptr());
  py::register_exception<SingularR>(m, "SingularR", base.ptr());
  py::register_exception<SignNoConvergence>(m, "SignNoConvergence", base.ptr());

  py::class_<LureProblem>(m, "LureProblem")
      .def(py::init<Matrix, Matrix, Matrix, Matrix, Matrix>(), py::arg("A"), py::arg("B"), py::arg("C"), py::arg("Q"),
           py::arg("R"))
      .def_property_readonly("A", &LureProblem::A)
      .def_property_readonly("B", &LureProblem::B)
      .def_property_readonly("C", &LureProblem::C)
      .def_property_readonly("Q", &LureProblem::Q)
      .def_property_readonly("R", &LureProblem::R)
      .def_property_readonly("n", &LureProblem::n)
      .def_property_readonly("m", &LureProblem::m)
      .def("__repr__", [](const LureProblem& p) {
        return "<LureProblem n=" + std::to_string(p.n()) + " m=" + std::to_string(p.m()) + ">";
      });

  py::class_<LureSolution>(m, "LureSolution")
      .def_readonly("X", &LureSolution::X)
      .def_readonly("K", &LureSolution::K)
      .def_readonly("L", &LureSolution::L)
      .def_readonly("p", &LureSolution::p)
      .def_readonly("relative_residual", &LureSolution::relative_residual)
      .def_readonly("gamma", &LureSolution::gamma_used)
      .def_readonly("iterations", &LureSolution::iterations)
      .def_property_readonly("termination",
                             [](const LureSolution& s) { return to_string(s.trace.reason); });

  py::class_<ConstructedProblem>(m, "ConstructedProblem")
      .def_readonly("problem", &ConstructedProblem::problem)
      .def_readonly("X", &ConstructedProblem::X)
      .def_readonly("K", &ConstructedProblem::K)
      .def_readonly("L", &ConstructedProblem::L);

  py::class_<GammaSearchResult>(m, "GammaSearchResult")
      .def_readonly("gamma", &GammaSearchResult::gamma)
      .def_readonly("f_value", &GammaSearchResult::f_value)
      .def_property_readonly("evaluations", [](const GammaSearchResult& r) {
        std::vector<std::pair<double, double>> out;
        for (const auto& e : r.evaluations) out.emplace_back(e.gamma, e.f);
        return out;
      });

  m.def("gen_p1", &gen_p1, py::arg("n"), py::arg("m"), py::arg("seed") = 0);
  m.def("gen_p3", &gen_p3, py::arg("n"));
  m.def("gen_constructed", &gen_constructed, py::arg("n"), py::arg("m"), py::arg("p"), py::arg("seed") = 0);
  m.def("parse_problem", &parse_problem, py::arg("text"));
  m.def("format_problem", &format_problem, py::arg("problem"));
  m.def("load_problem", &load_problem, py::arg("path"));
  m.def("save_problem", &save_problem, py::arg("problem"), py::arg("path"));

  m.def(
      "solve",
      [](const LureProblem& p, std::optional<double> gamma, std::optional<GammaBracket> bracket, double tol,
         int max_iter, double rank_tol) {
        return solve_lure(p, make_options(gamma, bracket, tol, max_iter, rank_tol));
      },
      py::arg("problem"), py::arg("gamma") = py::none(), py::arg("gamma_bracket") = py::none(),
      py::arg("tol") = 1e-14, py::arg("max_iter") = 60, py::arg("rank_tol") = 1e-10,
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "solve_rs",
      [](const LureProblem& p, double eps, std::optional<double> gamma) {
        SolveOptions o;
        o.gamma = gamma;
        return solve_rs(p, eps, o);
      },
      py::arg("problem"), py::arg("eps"), py::arg("gamma") = py::none(), py::call_guard<py::gil_scoped_release>());
  m.def(
      "solve_rn", [](const LureProblem& p, double eps) { return solve_rn(p, eps); }, py::arg("problem"),
      py::arg("eps"), py::call_guard<py::gil_scoped_release>());

  m.def("f_gamma", &f_gamma, py::arg("problem"), py::arg("gamma"));
  m.def("choose_gamma", &choose_gamma, py::arg("problem"), py::arg("bracket") = py::none());
  m.def("relative_residual", &relative_residual, py::arg("problem"), py::arg("X"), py::arg("K"), py::arg("L"));
  m.def("forward_error", &forward_error, py::arg("X"), py::arg("X_ref"));
}
