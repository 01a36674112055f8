#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pim/approx.hpp"
#include "pim/oracle.hpp"
#include "pim/platform.hpp"
#include "pim/quadrature.hpp"
#include "pim/quantize.hpp"
#include "pim/verify.hpp"

namespace py = pybind11;
using namespace pim;

namespace {

// Thin handle so python users can parse once and evaluate/differentiate many
// times without re-parsing.
struct Expr {
    ExprPtr node;

    std::string str() const { return to_string(node); }
};

BaseSpec spec_from(double s, const std::string& preset) {
    if (preset.empty()) return BaseSpec(s);
    if (preset == "unmodified") return BaseSpec::unmodified();
    if (preset == "kramers-langer") return BaseSpec::kramers_langer();
    if (preset == "no-centrifugal") return BaseSpec::no_centrifugal();
    throw DomainError("unknown preset '" + preset + "'");
}

} // namespace

PYBIND11_MODULE(_pim, m) {
    m.doc() = "phase-integral approximations of order one and three built on the "
              "platform function P_s";

    // translators run newest-first, so the base class goes in first
    py::register_exception<Error>(m, "PimError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ExpressionParseError", PyExc_ValueError);
    py::register_exception<GuardError>(m, "ForbiddenRegionError", PyExc_ArithmeticError);
    py::register_exception<BreakdownError>(m, "BreakdownError", PyExc_ArithmeticError);

    py::class_<Expr>(m, "Expr")
        .def_static("parse", [](const std::string& s) { return Expr{parse(s)}; },
                    py::arg("source"))
        .def("derivative", [](const Expr& e) { return Expr{differentiate(e.node)}; })
        .def("__call__",
             [](const Expr& e, double z, const ParamSet& params) {
                 return evaluate(e.node, z, params);
             },
             py::arg("z"), py::arg("params") = ParamSet{})
        .def("parameters", [](const Expr& e) { return parameters_of(e.node); })
        .def("__str__", &Expr::str)
        .def("__repr__", [](const Expr& e) { return "Expr(\"" + e.str() + "\")"; });

    py::class_<Interval>(m, "Interval")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
        .def_readwrite("lo", &Interval::lo)
        .def_readwrite("hi", &Interval::hi);

    py::class_<Potential>(m, "Potential")
        .def_static("builtin", &Potential::builtin, py::arg("name"),
                    py::arg("params") = ParamSet{})
        .def_static(
            "from_expression",
            [](const std::string& source, const ParamSet& params, const Interval& domain) {
                return Potential::from_source(source, params, domain);
            },
            py::arg("source"), py::arg("params") = ParamSet{},
            py::arg("domain") = Interval{})
        .def("r", &Potential::r, py::arg("z"))
        .def("dr", &Potential::dr, py::arg("z"))
        .def("d2r", &Potential::d2r, py::arg("z"))
        .def("rebind", &Potential::rebind, py::arg("name"), py::arg("value"))
        .def_property_readonly("label", &Potential::label)
        .def_property_readonly("domain", &Potential::domain)
        .def_property_readonly("singularities", &Potential::singularities)
        .def_property_readonly("params", &Potential::params)
        .def("__repr__",
             [](const Potential& p) { return "Potential(" + p.label() + ")"; });

    py::class_<BaseSpec>(m, "BaseSpec")
        .def(py::init([](double s, const std::string& preset) {
                 return spec_from(s, preset);
             }),
             py::arg("s") = 0.0, py::arg("preset") = "")
        .def_readonly("s", &BaseSpec::s);

    py::class_<BaseFunction>(m, "BaseFunction")
        .def("q2", &BaseFunction::q2, py::arg("z"))
        .def("q", &BaseFunction::q, py::arg("z"))
        .def("dq", &BaseFunction::dq, py::arg("z"))
        .def("d2q", &BaseFunction::d2q, py::arg("z"))
        .def("mismatch", &BaseFunction::mismatch, py::arg("z"))
        .def_property_readonly("canonical", &BaseFunction::canonical)
        .def_property_readonly("s", &BaseFunction::s);

    m.def("make_base",
          py::overload_cast<const Potential&, const BaseSpec&>(&make_base),
          py::arg("potential"), py::arg("spec"));
    m.def("make_base",
          py::overload_cast<const Potential&, const BaseSpec&, const Potential&>(&make_base),
          py::arg("potential"), py::arg("spec"), py::arg("q2_override"));
    m.def("turning_points", &turning_points, py::arg("base"), py::arg("lo"), py::arg("hi"),
          py::arg("n_scan") = 1024);

    m.def("platform_value", &platform_value, py::arg("base"), py::arg("z"));
    m.def("platform_derivative", &platform_derivative, py::arg("base"), py::arg("z"));
    m.def("y2", &y2, py::arg("base"), py::arg("z"));
    m.def("epsilon0", &epsilon0, py::arg("base"), py::arg("z"));
    m.def("identity_residual", &identity_residual, py::arg("base"), py::arg("z"));

    py::class_<QuadResult>(m, "QuadResult")
        .def_readonly("value", &QuadResult::value)
        .def_readonly("error_estimate", &QuadResult::error_estimate)
        .def_readonly("evaluations", &QuadResult::evaluations);
    m.def("integrate", &integrate, py::arg("f"), py::arg("a"), py::arg("b"),
          py::arg("abs_tol") = kQuadDefaultAbsTol, py::arg("rel_tol") = kQuadDefaultRelTol);
    m.def("integrate_to_turning_point", &integrate_to_turning_point, py::arg("f"),
          py::arg("a"), py::arg("tp"), py::arg("abs_tol") = kQuadDefaultAbsTol);

    py::enum_<ExpansionOrder>(m, "ExpansionOrder")
        .value("first", ExpansionOrder::first)
        .value("third", ExpansionOrder::third);

    py::class_<PhaseApprox>(m, "PhaseApprox")
        .def(py::init<BaseFunction, ExpansionOrder, double, int, double, double>(),
             py::arg("base"), py::arg("order"), py::arg("anchor"), py::arg("branch") = +1,
             py::arg("abs_tol") = kQuadDefaultAbsTol, py::arg("rel_tol") = kQuadDefaultRelTol)
        .def("phase", &PhaseApprox::phase, py::arg("z"))
        .def("amplitude", &PhaseApprox::amplitude, py::arg("z"))
        .def("effective_q", &PhaseApprox::effective_q, py::arg("z"))
        .def("wavefunction", &PhaseApprox::wavefunction, py::arg("z"))
        .def("psi", &PhaseApprox::psi, py::arg("z"))
        .def("wronskian_residual", &PhaseApprox::wronskian_residual, py::arg("z"))
        .def_property_readonly("anchor", &PhaseApprox::anchor);

    py::class_<OracleSolution>(m, "OracleSolution")
        .def_readonly("grid", &OracleSolution::grid)
        .def_readonly("psi", &OracleSolution::psi)
        .def_readonly("dpsi", &OracleSolution::dpsi)
        .def_readonly("tol", &OracleSolution::tol);
    m.def("solve_ivp", &solve_ivp, py::arg("potential"), py::arg("z0"), py::arg("psi0"),
          py::arg("dpsi0"), py::arg("z1"), py::arg("tol"), py::arg("n_dense") = 0);

    py::class_<OrderComparison>(m, "OrderComparison")
        .def_readonly("err_first", &OrderComparison::err_first)
        .def_readonly("err_third", &OrderComparison::err_third);
    m.def("compare_orders", &compare_orders, py::arg("potential"), py::arg("spec"),
          py::arg("anchor"), py::arg("probe"), py::arg("tol") = 1e-12);

    py::class_<BoundStateProblem>(m, "BoundStateProblem")
        .def(py::init([](double Z, double l, int n_r, const BaseSpec& spec) {
                 return BoundStateProblem{Z, l, n_r, spec};
             }),
             py::arg("Z") = 1.0, py::arg("l") = 0.0, py::arg("n_r") = 0,
             py::arg("spec") = BaseSpec::kramers_langer())
        .def_readwrite("Z", &BoundStateProblem::Z)
        .def_readwrite("l", &BoundStateProblem::l)
        .def_readwrite("n_r", &BoundStateProblem::n_r);
    m.def("action", &action, py::arg("potential"), py::arg("spec"), py::arg("E"),
          py::arg("abs_tol") = 1e-12);
    m.def("eigenvalue", &eigenvalue, py::arg("problem"), py::arg("e_lo"), py::arg("e_hi"));
    m.def("default_bracket", &default_bracket, py::arg("problem"));

    m.def(
        "run_verify",
        [](const std::vector<std::string>& corpus, const std::vector<std::string>& checks) {
            VerifyOptions opt;
            opt.corpus = corpus;
            opt.checks = checks;
            VerifyReport rep = run_verify(opt);
            py::list out;
            for (const auto& c : rep.checks) {
                py::dict d;
                d["name"] = c.name;
                d["worst"] = c.worst;
                d["threshold"] = c.threshold;
                d["worst_at"] = c.worst_at;
                d["pass"] = c.pass;
                out.append(d);
            }
            return out;
        },
        py::arg("corpus") = std::vector<std::string>{},
        py::arg("checks") = std::vector<std::string>{});

    m.def("fd_derivative", &fd_derivative, py::arg("f"), py::arg("z"), py::arg("order"));
}
