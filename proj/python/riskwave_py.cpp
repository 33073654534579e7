#include "riskwave/commands.hpp"
#include "riskwave/config.hpp"
#include "riskwave/dispersion.hpp"
#include "riskwave/kinetic.hpp"
#include "riskwave/model.hpp"
#include "riskwave/version.hpp"
#include "riskwave/wavefield.hpp"

#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace riskwave;

namespace {

py::object error_type;

ModelParams make_params(double a1, double a2, double b, double d, double g_x, double g_y, double h_x, double h_y,
                        double I0, double P0, double X, double Y) {
    ModelParams p;
    p.a1 = a1;
    p.a2 = a2;
    p.b = b;
    p.d = d;
    p.g = {g_x, g_y};
    p.h = {h_x, h_y};
    p.I0 = I0;
    p.P0 = P0;
    p.X = X;
    p.Y = Y;
    return p;
}

WeightPolicy parse_policy(const std::string& s) {
    if (s == "minimal-norm") return WeightPolicy::minimal_norm;
    if (s == "pin-zero") return WeightPolicy::pin_secondary_zero;
    throw Error(ErrorCode::invalid_argument, "policy must be minimal-norm or pin-zero, got '" + s + "'");
}

py::tuple vec(Vec2 v) { return py::make_tuple(v.x, v.y); }

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Risk-space wave model";
    m.attr("__version__") = version;

    error_type = py::exception<Error>(m, "RiskwaveError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr ep) {
        try {
            if (ep) std::rethrow_exception(ep);
        } catch (const Error& e) {
            py::object exc = error_type(e.what());
            exc.attr("code") = to_string(e.code());
            exc.attr("exit_code") = exit_code(e.code());
            PyErr_SetObject(error_type.ptr(), exc.ptr());
        }
    });

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init(&make_params), py::kw_only(), py::arg("a1") = 1.0, py::arg("a2") = -1.0, py::arg("b") = 1.0,
             py::arg("d") = -1.0, py::arg("g_x") = 1.0, py::arg("g_y") = 1.0, py::arg("h_x") = 1.0,
             py::arg("h_y") = 1.0, py::arg("I0") = 1.0, py::arg("P0") = 1.0, py::arg("X") = 0.25,
             py::arg("Y") = 0.25)
        .def_readwrite("a1", &ModelParams::a1)
        .def_readwrite("a2", &ModelParams::a2)
        .def_readwrite("b", &ModelParams::b)
        .def_readwrite("d", &ModelParams::d)
        .def_property("g_x", [](const ModelParams& p) { return p.g.x; }, [](ModelParams& p, double v) { p.g.x = v; })
        .def_property("g_y", [](const ModelParams& p) { return p.g.y; }, [](ModelParams& p, double v) { p.g.y = v; })
        .def_property("h_x", [](const ModelParams& p) { return p.h.x; }, [](ModelParams& p, double v) { p.h.x = v; })
        .def_property("h_y", [](const ModelParams& p) { return p.h.y; }, [](ModelParams& p, double v) { p.h.y = v; })
        .def_readwrite("I0", &ModelParams::I0)
        .def_readwrite("P0", &ModelParams::P0)
        .def_readwrite("X", &ModelParams::X)
        .def_readwrite("Y", &ModelParams::Y)
        .def(py::self == py::self)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(a1=" + std::to_string(p.a1) + ", a2=" + std::to_string(p.a2) +
                   ", b=" + std::to_string(p.b) + ", d=" + std::to_string(p.d) + ", ...)";
        });

    m.def("validate", [](const ModelParams& p) {
        std::vector<std::string> out;
        for (const auto& v : validate_params(p).violations) out.push_back(v.message);
        return out;
    }, "Messages for every violated constraint; empty when valid.");
    m.def("steady_fields", [](const ModelParams& p, double x, double y) {
        const auto s = steady_fields(p, x, y);
        return py::make_tuple(s.I, s.P);
    });
    m.def("corner_values", [](const ModelParams& p) {
        const auto c = corner_values(p);
        py::dict d;
        d["I_secure"] = c.I_secure;
        d["P_secure"] = c.P_secure;
        d["I_risky"] = c.I_risky;
        d["P_risky"] = c.P_risky;
        return d;
    });
    m.def("incompressible_amplitudes", [](double a1, double a2, double b, double d, double g_y) {
        const auto a = incompressible_amplitudes(a1, a2, b, d, g_y);
        return py::make_tuple(a.I0, a.P0);
    }, py::arg("a1"), py::arg("a2"), py::arg("b"), py::arg("d"), py::arg("g_y"));

    py::class_<IncompressibleMode>(m, "IncompressibleMode")
        .def_readonly("k", &IncompressibleMode::k)
        .def_readonly("omega", &IncompressibleMode::omega)
        .def_readonly("c", &IncompressibleMode::c)
        .def_readonly("kappa", &IncompressibleMode::kappa)
        .def_readonly("wavelength", &IncompressibleMode::wavelength);
    m.def("incompressible_mode", &incompressible_mode, py::arg("params"), py::arg("k"));

    py::class_<WaveMode>(m, "WaveMode")
        .def_readonly("omega", &WaveMode::omega)
        .def_readonly("k", &WaveMode::k)
        .def_readonly("roots", &WaveMode::roots)
        .def_property_readonly("regime", [](const WaveMode& w) { return to_string(w.regime()); })
        .def_property_readonly("policy", [](const WaveMode& w) { return to_string(w.profile.policy); })
        .def_property_readonly("weights", [](const WaveMode& w) { return w.profile.weights(); })
        .def_property_readonly("rates", [](const WaveMode& w) {
            std::vector<double> r;
            for (const auto& c : w.profile.components) r.push_back(c.rate);
            return r;
        })
        .def_property_readonly("constraint_residual", [](const WaveMode& w) { return w.profile.constraint_residual(); })
        .def("profile", [](const WaveMode& w, double eta, int order) { return w.profile.value(eta, order); },
             py::arg("eta"), py::arg("order") = 0)
        .def_property_readonly("amplifying", [](const WaveMode& w) { return inward_growth_rates(w).amplifying; });

    m.def("compressible_mode", [](const ModelParams& p, double omega, double k, const std::string& policy, double tol) {
        return compressible_mode(p, omega, k, parse_policy(policy), tol);
    }, py::arg("params"), py::arg("omega"), py::arg("k"), py::arg("policy") = "minimal-norm",
       py::arg("tol") = default_root_tol);
    m.def("incompressible_wave_mode", &incompressible_wave_mode, py::arg("params"), py::arg("k"));
    m.def("simplest_mode", &simplest_mode, py::arg("params"), py::arg("omega"), py::arg("k"));

    m.def("field", [](const WaveMode& w, const ModelParams& p, double A, double t, double x, double y) {
        const auto f = field_perturbations(w, p, A, t, x, y);
        return py::make_tuple(f.I, f.P);
    }, py::arg("mode"), py::arg("params"), py::arg("amplitude"), py::arg("t"), py::arg("x"), py::arg("y"));
    m.def("velocities", [](const WaveMode& w, const ModelParams& p, double A, double t, double x, double y) {
        const auto s = potential_and_velocity(w, p, A, t, x, y);
        return py::make_tuple(vec(s.v), vec(s.u));
    }, py::arg("mode"), py::arg("params"), py::arg("amplitude"), py::arg("t"), py::arg("x"), py::arg("y"));
    m.def("boundary_shape", &boundary_shape, py::arg("mode"), py::arg("params"), py::arg("amplitude"), py::arg("t"),
          py::arg("x"));
    m.def("aggregate_investment", &aggregate_investment, py::arg("mode"), py::arg("params"), py::arg("amplitude"),
          py::arg("t"));
    m.def("trajectory", [](const WaveMode& w, const ModelParams& p, double A, double x0, double y0,
                           const std::vector<double>& ts, bool integrate) {
        const auto pts = integrate ? integrate_trajectory(w, p, A, {x0, y0}, ts)
                                   : circulation_trajectory(w, p, A, x0, y0, ts);
        std::vector<std::pair<double, double>> out;
        for (const auto& q : pts) out.emplace_back(q.x, q.y);
        return out;
    }, py::arg("mode"), py::arg("params"), py::arg("amplitude"), py::arg("x0"), py::arg("y0"), py::arg("times"),
       py::arg("integrate") = false);

    m.def("deposit", [](py::array_t<double, py::array::c_style | py::array::forcecast> particles, int nx, int ny,
                        double X, double Y, std::size_t variable, bool bilinear) {
        if (particles.ndim() != 2 || particles.shape(1) < 5)
            throw Error(ErrorCode::invalid_argument, "particles must be an (n, 4 + l) array with l >= 1");
        const auto r = particles.unchecked<2>();
        std::vector<EParticle> ps;
        for (py::ssize_t i = 0; i < r.shape(0); ++i) {
            EParticle e{{r(i, 0), r(i, 1)}, {r(i, 2), r(i, 3)}, {}};
            for (py::ssize_t j = 4; j < r.shape(1); ++j) e.values.push_back(r(i, j));
            ps.push_back(std::move(e));
        }
        if (variable < 1) throw Error(ErrorCode::invalid_argument, "variable counts from 1");
        const auto f = deposit_fields(ps, {nx, ny, X, Y}, variable - 1,
                                      bilinear ? Deposition::bilinear : Deposition::nearest_cell);
        const auto vel = field_velocity(f.density, f.impulse);
        py::array_t<double> rho({ny, nx}), imp({ny, nx, 2}), v({ny, nx, 2});
        auto R = rho.mutable_unchecked<2>();
        auto M = imp.mutable_unchecked<3>();
        auto V = v.mutable_unchecked<3>();
        const double nan = std::numeric_limits<double>::quiet_NaN();
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                R(j, i) = f.density.at(i, j);
                M(j, i, 0) = f.impulse.at(i, j).x;
                M(j, i, 1) = f.impulse.at(i, j).y;
                const auto& w = vel.at(i, j);
                V(j, i, 0) = w ? w->x : nan;
                V(j, i, 1) = w ? w->y : nan;
            }
        return py::make_tuple(rho, imp, v);
    }, py::arg("particles"), py::arg("nx"), py::arg("ny"), py::arg("X"), py::arg("Y"), py::arg("variable") = 1,
       py::arg("bilinear") = false,
       "Rows are x, y, vx, vy, u1, ...; returns density[ny, nx], impulse and velocity[ny, nx, 2] (NaN where empty).");

    m.def("parse_config", [](const std::string& text) { return render_config(parse_config(text)); },
          "Parses and validates a config, returning its canonical rendering.");
    m.def("run", [](const std::string& command, const std::string& config_text, const std::string& out_dir,
                    const std::string& base_dir, std::optional<std::string> policy, std::optional<double> tol) {
        const auto cmd = parse_command(command);
        if (!cmd) throw Error(ErrorCode::invalid_argument, "unknown command '" + command + "'");
        RunOptions opt{out_dir, base_dir};
        if (policy) opt.policy = parse_policy(*policy);
        opt.tol = tol;
        const auto r = execute(parse_config(config_text), *cmd, opt);
        return py::make_tuple(r.files, r.warnings);
    }, py::arg("command"), py::arg("config"), py::arg("out_dir") = ".", py::arg("base_dir") = ".",
       py::arg("policy") = py::none(), py::arg("tol") = py::none(),
       "Runs a CLI command on config text; returns (files, warnings).");
    m.attr("commands") = command_names();
}
