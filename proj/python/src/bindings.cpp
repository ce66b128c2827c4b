#include "graphent/dispersion.hpp"
#include "graphent/dynamics.hpp"
#include "graphent/entanglement.hpp"
#include "graphent/errors.hpp"
#include "graphent/greens.hpp"
#include "graphent/material.hpp"
#include "graphent/pipeline.hpp"
#include "graphent/units.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace graphent;

namespace {

Environment make_env(double eps_r1, double eps_r2, std::optional<double> mu_c_ev, double tau_ps, double vd_over_vf)
{
    if (!mu_c_ev)
        return Environment::homogeneous(eps_r2);
    return Environment::graphene(eps_r1, eps_r2, GrapheneParams::from_config_units(*mu_c_ev, tau_ps, vd_over_vf));
}

py::dict sweep_to_dict(const SweepResult& r)
{
    py::dict out;
    py::dict cols;
    for (const auto& c : r.columns)
        cols[py::str(c)] = r.column_values(c);
    out["columns"] = cols;
    out["metadata"] = py::module_::import("json").attr("loads")(r.metadata.dump());
    out["csv"] = r.to_csv();
    return out;
}

} // namespace

PYBIND11_MODULE(_graphent, m)
{
    m.doc() = "Graphene-plasmon mediated two-qubit entanglement: conductivity, dispersion, "
              "Green's functions, master-equation dynamics and concurrence.";

    py::register_exception<Error>(m, "GraphentError", PyExc_RuntimeError);
    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);

    m.attr("VF") = units::vF;
    m.def("vacuum_wavelength", &units::vacuum_wavelength, py::arg("f_thz"), "c/f in metres.");
    m.def("thz_to_omega", &units::thz_to_omega, py::arg("f_thz"));
    m.def("sigma_min", &sigma_min);

    py::class_<GrapheneParams>(m, "GrapheneParams")
        .def(py::init([](double mu_c_ev, double tau_ps, double vd_over_vf) {
                 auto p = GrapheneParams::from_config_units(mu_c_ev, tau_ps, vd_over_vf);
                 p.validate();
                 return p;
             }),
             py::arg("mu_c_ev") = 0.1, py::arg("tau_ps") = 0.35, py::arg("vd_over_vf") = 0.0)
        .def_readonly("mu_c", &GrapheneParams::mu_c)
        .def_readonly("tau", &GrapheneParams::tau)
        .def_readonly("v_d", &GrapheneParams::v_d);

    m.def("local_conductivity", &local_conductivity, py::arg("omega"), py::arg("sheet"));
    m.def("doppler_conductivity", py::overload_cast<double, double, const GrapheneParams&>(&doppler_conductivity),
          py::arg("omega"), py::arg("q_x"), py::arg("sheet"));

    py::class_<Environment>(m, "Environment")
        .def(py::init(&make_env), py::arg("eps_r1") = 1.0, py::arg("eps_r2") = 1.0, py::arg("mu_c_ev") = py::none(),
             py::arg("tau_ps") = 0.35, py::arg("vd_over_vf") = 0.0,
             "Homogeneous medium when mu_c_ev is None, graphene sheet otherwise.")
        .def_readonly("eps_r1", &Environment::eps_r1)
        .def_readonly("eps_r2", &Environment::eps_r2)
        .def_property_readonly("has_sheet", &Environment::has_sheet)
        .def("k2", &Environment::k2, py::arg("omega"));

    m.def(
        "solve_spp",
        [](double phi, double omega, const Environment& env, const std::string& doppler_arg) {
            DispersionOptions o;
            o.doppler_arg = parse_doppler_arg(doppler_arg);
            return solve_spp(phi, omega, env, std::nullopt, o).q;
        },
        py::arg("phi"), py::arg("omega"), py::arg("env"), py::arg("doppler_arg") = "re",
        "Complex SPP wavenumber (rad/m) along in-plane direction phi.");
    m.def(
        "spp_wavelength", [](double omega, const Environment& env) { return spp_wavelength(omega, env); },
        py::arg("omega"), py::arg("env"));
    m.def(
        "normalization_wavelength",
        [](double omega, const Environment& env) { return normalization_wavelength(omega, env); }, py::arg("omega"),
        py::arg("env"));

    m.def(
        "gzz",
        [](double omega, const Environment& env, std::array<double, 3> r, std::array<double, 3> r_src) {
            return LayeredGreens(omega, env).total({r[0], r[1], r[2]}, {r_src[0], r_src[1], r_src[2]});
        },
        py::arg("omega"), py::arg("env"), py::arg("r"), py::arg("r_src"), "G_zz(r <- r_src), principal + scattered.");
    m.def(
        "scattered_gzz",
        [](double omega, const Environment& env, double rho, double theta, double z_plus_zp, bool bessel) {
            LayeredGreens g(omega, env);
            return bessel ? g.scattered_reciprocal(rho, z_plus_zp) : g.scattered(rho, theta, z_plus_zp);
        },
        py::arg("omega"), py::arg("env"), py::arg("rho"), py::arg("theta"), py::arg("z_plus_zp"),
        py::arg("bessel") = false);
    m.def(
        "couplings",
        [](double omega, const Environment& env, double height, double rho, double theta) {
            const auto c = coupling_coefficients(omega, env, EmitterGeometry::planar(height, rho, theta),
                                                 DipoleScale::normalized());
            return py::make_tuple(Eigen::Matrix2d(c.gamma), Eigen::Matrix2d(c.g));
        },
        py::arg("omega"), py::arg("env"), py::arg("height"), py::arg("rho"), py::arg("theta"),
        "(Gamma, g) in units of Gamma_11.");

    py::class_<DynamicsParams>(m, "DynamicsParams")
        .def(py::init([](double gamma12, double gamma21, double g12, double g21, double omega1, double omega2) {
                 DynamicsParams p;
                 p.gamma12 = gamma12;
                 p.gamma21 = gamma21;
                 p.g12 = g12;
                 p.g21 = g21;
                 p.omega1 = omega1;
                 p.omega2 = omega2;
                 return p;
             }),
             py::arg("gamma12") = 0.0, py::arg("gamma21") = 0.0, py::arg("g12") = 0.0, py::arg("g21") = 0.0,
             py::arg("omega1") = 0.0, py::arg("omega2") = 0.0);

    m.def("initial_state", &initial_state);
    m.def(
        "evolve",
        [](const DynamicsParams& p, const std::vector<double>& t) {
            return evolve(initial_state(), build_liouvillian(p), t);
        },
        py::arg("params"), py::arg("t"), "Density matrices at each time, starting from |e1 g2>.");
    m.def(
        "steady_state", [](const DynamicsParams& p) { return steady_state(build_liouvillian(p)).rho; },
        py::arg("params"));
    m.def(
        "concurrence", [](const Eigen::Matrix4cd& rho) { return concurrence(rho); }, py::arg("rho"));

    m.def(
        "run_sweep",
        [](const std::string& kind, const Environment& env, std::vector<double> grid, double frequency_thz,
           double height_over_lambda, double rho_over_lambda, std::optional<double> theta_deg, double omega1,
           double omega2, int threads) {
            ExperimentSpec s;
            s.env = env;
            s.grid = std::move(grid);
            s.frequency_thz = frequency_thz;
            s.height_over_lambda = height_over_lambda;
            s.rho_over_lambda = rho_over_lambda;
            s.theta_deg = theta_deg;
            s.omega1 = omega1;
            s.omega2 = omega2;
            s.threads = threads;
            SweepResult r;
            {
                py::gil_scoped_release release;
                r = run_sweep(parse_sweep_kind(kind), s);
            }
            return sweep_to_dict(r);
        },
        py::arg("kind"), py::arg("env"), py::arg("grid") = std::vector<double>{}, py::arg("frequency_thz") = 15.0,
        py::arg("height_over_lambda") = 1.0 / 3.0, py::arg("rho_over_lambda") = 2.0,
        py::arg("theta_deg") = py::none(), py::arg("omega1") = 0.0, py::arg("omega2") = 0.0, py::arg("threads") = 1,
        "Runs an angle, distance, transient, drive_scan or routing sweep.");
}
