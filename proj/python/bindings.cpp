#include "aer/assumptions.hpp"
#include "aer/config.hpp"
#include "aer/errors.hpp"
#include "aer/expr.hpp"
#include "aer/front.hpp"
#include "aer/layer.hpp"
#include "aer/noise.hpp"
#include "aer/outer.hpp"
#include "aer/pipeline.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace aer;

namespace {

// Field values as an (m+1, n+1) array indexed [j, i].
py::array_t<double> to_array(const Field2D& f) {
    const Grid2D& g = f.grid();
    py::array_t<double> out({g.ny(), g.nx()});
    std::copy(f.values().begin(), f.values().end(), out.mutable_data());
    return out;
}

Field2D from_array(const Grid2D& g, const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2 || a.shape(0) != g.ny() || a.shape(1) != g.nx())
        throw ConfigError("array shape does not match the grid (m+1, n+1)");
    return Field2D(g, std::vector<double>(a.data(), a.data() + a.size()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Compiled core of the aer package";

    static py::exception<Error> base(m, "Error");
    static py::exception<ConfigError> config_exc(m, "ConfigError", base.ptr());
    static py::exception<AssumptionViolation> assumption_exc(m, "AssumptionViolation", base.ptr());
    static py::exception<NumericalError> numerical_exc(m, "NumericalError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ConfigError& e) {
            py::set_error(config_exc, e.what());
        } catch (const AssumptionViolation& e) {
            py::set_error(assumption_exc, e.what());
        } catch (const NumericalError& e) {
            py::set_error(numerical_exc, e.what());
        } catch (const Error& e) {
            py::set_error(base, e.what());
        }
    });

    py::enum_<Side>(m, "Side").value("minus", Side::minus).value("plus", Side::plus);

    py::class_<Expr>(m, "Expr")
        .def(py::init([](const std::string& s) { return parse(s); }))
        .def("__call__", &Expr::eval, py::arg("x"), py::arg("y") = 0.0)
        .def("__str__", &Expr::to_string)
        .def_property_readonly("source", &Expr::source);

    py::class_<Grid2D>(m, "Grid2D")
        .def(py::init<double, double, double, int, int>(), py::arg("x0"), py::arg("x1"), py::arg("a"), py::arg("n"),
             py::arg("m"))
        .def_property_readonly("n", &Grid2D::n)
        .def_property_readonly("m", &Grid2D::m)
        .def_property_readonly("d1", &Grid2D::d1)
        .def_property_readonly("d2", &Grid2D::d2)
        .def("x", &Grid2D::x)
        .def("y", &Grid2D::y);

    py::class_<ProblemSpec>(m, "ProblemSpec")
        .def_readwrite("mu", &ProblemSpec::mu)
        .def_readwrite("k", &ProblemSpec::k)
        .def_readwrite("x0", &ProblemSpec::x0)
        .def_readwrite("x1", &ProblemSpec::x1)
        .def_readwrite("a", &ProblemSpec::a)
        .def_readwrite("T", &ProblemSpec::T)
        .def_readwrite("h0_star", &ProblemSpec::h0_star)
        .def_readwrite("t0", &ProblemSpec::t0)
        .def_readwrite("f", &ProblemSpec::f)
        .def("validate", &ProblemSpec::validate)
        .def("grid", &ProblemSpec::grid);

    m.def("preset", [](const std::string& name) { return preset_config(name).problem; }, py::arg("name"));
    m.def("load_problem", [](const std::string& path) { return load_config(path, "").problem; }, py::arg("path"));

    m.def("eval_phi", &eval_phi, py::arg("spec"), py::arg("side"), py::arg("x"), py::arg("y"));
    m.def("eval_u1", &eval_u1, py::arg("spec"), py::arg("side"), py::arg("x"), py::arg("y"));
    m.def("phi_field", [](const ProblemSpec& s, Side side, const Grid2D& g) { return to_array(phi_field(s, side, g)); });

    m.def("assumptions_hold", [](const ProblemSpec& s) {
        return check_assumption1(s).passed && check_assumption2(s).passed;
    });

    m.def(
        "front_at",
        [](const ProblemSpec& s, int n, double t) {
            Grid2D g = s.grid(n, 2);
            FrontOptions fo;
            fo.extra_times = {t};
            FrontCurve fc = solve_front(s, g, fo);
            return fc.h_row(t);
        },
        py::arg("spec"), py::arg("n"), py::arg("t"));

    m.def(
        "layer_width",
        [](double jump, double mu, double k, double h0x) { return layer_width(jump, mu, k, h0x).width; },
        py::arg("jump"), py::arg("mu"), py::arg("k"), py::arg("h0x") = 0.0);

    m.def(
        "add_noise",
        [](const Grid2D& g, const py::array_t<double, py::array::c_style | py::array::forcecast>& u, double delta,
           std::uint64_t seed) { return to_array(add_noise(from_array(g, u), delta, seed)); },
        py::arg("grid"), py::arg("u"), py::arg("delta"), py::arg("seed"));

    m.def(
        "run_pipeline",
        [](const ProblemSpec& s, double delta, std::uint64_t seed, int n) {
            PipelineConfig cfg;
            cfg.n = cfg.m = n;
            cfg.delta = delta;
            cfg.seed = seed;
            std::optional<PipelineResult> res;
            {
                py::gil_scoped_release release;
                res = run_aer_pipeline(s, cfg);
            }
            const PipelineResult& r = *res;
            py::dict d;
            d["rel_err_f"] = r.rel_err_f;
            d["rel_err_u0"] = r.rel_err_u0;
            d["m_minus"] = r.obs.mask.j_lo;
            d["m_plus"] = r.obs.mask.j_hi;
            d["branch"] = r.branch;
            d["f_delta"] = to_array(r.recon.f_delta);
            return d;
        },
        py::arg("spec"), py::arg("delta") = 0.01, py::arg("seed") = 1, py::arg("n") = 50);
}
