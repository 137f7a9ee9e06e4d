#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "curved_larmor/analytic.hpp"
#include "curved_larmor/io.hpp"

namespace py = pybind11;
using namespace curved_larmor;

namespace {

std::vector<double> column(const Trajectory& traj,
                           double (*pick)(const Sample&)) {
    std::vector<double> out;
    out.reserve(traj.samples.size());
    for (const Sample& s : traj.samples) out.push_back(pick(s));
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Charged-particle motion in constant-curvature spaces under a "
              "uniform-analog magnetic field";

    py::class_<SpaceChart>(m, "SpaceChart")
        .def(py::init<>())
        .def(py::init([](int kappa, double rho, double c) {
                 SpaceChart chart{kappa, rho, c};
                 chart.validate();
                 return chart;
             }),
             py::arg("kappa") = -1, py::arg("rho") = 1.0, py::arg("c") = 1.0)
        .def_readwrite("kappa", &SpaceChart::kappa)
        .def_readwrite("rho", &SpaceChart::rho)
        .def_readwrite("c", &SpaceChart::c)
        .def("__repr__", [](const SpaceChart& ch) {
            return "SpaceChart(kappa=" + std::to_string(ch.kappa) +
                   ", rho=" + std::to_string(ch.rho) + ", c=" + std::to_string(ch.c) + ")";
        });

    py::class_<State>(m, "State")
        .def(py::init<>())
        .def(py::init([](double t, double r, double phi, double z, double vr,
                         double vphi, double vz) {
                 return State{t, r, phi, z, vr, vphi, vz};
             }),
             py::arg("t") = 0.0, py::arg("r") = 0.0, py::arg("phi") = 0.0,
             py::arg("z") = 0.0, py::arg("vr") = 0.0, py::arg("vphi") = 0.0,
             py::arg("vz") = 0.0)
        .def_readwrite("t", &State::t)
        .def_readwrite("r", &State::r)
        .def_readwrite("phi", &State::phi)
        .def_readwrite("z", &State::z)
        .def_readwrite("vr", &State::vr)
        .def_readwrite("vphi", &State::vphi)
        .def_readwrite("vz", &State::vz)
        .def("phi_wrapped", &State::phi_wrapped);

    py::class_<Embedded>(m, "Embedded")
        .def_readonly("u0", &Embedded::u0)
        .def_readonly("u1", &Embedded::u1)
        .def_readonly("u2", &Embedded::u2)
        .def_readonly("u3", &Embedded::u3);

    py::class_<KTrig>(m, "KTrig")
        .def_readonly("s", &KTrig::s)
        .def_readonly("c", &KTrig::c);

    py::class_<OrbitGeometry>(m, "OrbitGeometry")
        .def(py::init<>())
        .def(py::init([](double r0, double R, double phi0) {
                 return OrbitGeometry{r0, R, phi0};
             }),
             py::arg("r0") = 0.0, py::arg("R") = 0.0, py::arg("phi0") = 0.0)
        .def_readwrite("r0", &OrbitGeometry::r0)
        .def_readwrite("R", &OrbitGeometry::R)
        .def_readwrite("phi0", &OrbitGeometry::phi0);

    py::class_<FieldParams>(m, "FieldParams")
        .def(py::init<>())
        .def(py::init([](double B) { return FieldParams{B}; }), py::arg("B") = 1.0)
        .def_readwrite("B", &FieldParams::B);

    py::class_<ParticleParams>(m, "ParticleParams")
        .def(py::init<>())
        .def(py::init([](double mass, double charge) {
                 return ParticleParams{mass, charge};
             }),
             py::arg("mass") = 1.0, py::arg("charge") = 1.0)
        .def_readwrite("mass", &ParticleParams::mass)
        .def_readwrite("charge", &ParticleParams::charge);

    py::class_<MotionConstants>(m, "MotionConstants")
        .def(py::init<>())
        .def(py::init([](double epsilon, double omega, double I, double A, double C) {
                 return MotionConstants{epsilon, omega, I, A, C};
             }),
             py::arg("epsilon"), py::arg("omega"), py::arg("I"), py::arg("A"),
             py::arg("C"))
        .def_readwrite("epsilon", &MotionConstants::epsilon)
        .def_readwrite("omega", &MotionConstants::omega)
        .def_readwrite("I", &MotionConstants::I)
        .def_readwrite("A", &MotionConstants::A)
        .def_readwrite("C", &MotionConstants::C);

    // geometry
    m.def("ktrig", &ktrig, py::arg("chart"), py::arg("x"));
    m.def("embed", &embed, py::arg("chart"), py::arg("state"));
    m.def("embedding_residual", &embedding_residual, py::arg("chart"), py::arg("u"));
    m.def("circle_residual", &circle_residual, py::arg("chart"), py::arg("r"),
          py::arg("phi"), py::arg("geom"));

    // field
    m.def("vector_potential_phi", &vector_potential_phi, py::arg("chart"),
          py::arg("field"), py::arg("r"));
    m.def("field_strength_phir", &field_strength_phir, py::arg("chart"),
          py::arg("field"), py::arg("r"));
    m.def(
        "maxwell_residual",
        [](const SpaceChart& chart, const FieldParams& field,
           const std::vector<double>& grid, double z) {
            return maxwell_residual(chart, field, grid, z);
        },
        py::arg("chart"), py::arg("field"), py::arg("r_grid"), py::arg("z"));
    m.def(
        "maxwell_residual_potential",
        [](const SpaceChart& chart, const std::function<double(double)>& a_phi,
           const std::vector<double>& grid, double z) {
            return maxwell_residual_potential(chart, a_phi, grid, z);
        },
        py::arg("chart"), py::arg("a_phi"), py::arg("r_grid"), py::arg("z"));

    // invariants
    m.def("squared_speed", &squared_speed, py::arg("chart"), py::arg("state"));
    m.def("cyclotron_omega", &cyclotron_omega, py::arg("particle"), py::arg("field"),
          py::arg("chart"), py::arg("epsilon"));
    m.def("invariant_I", &invariant_I, py::arg("chart"), py::arg("state"),
          py::arg("omega"));
    m.def("invariant_A", &invariant_A, py::arg("chart"), py::arg("state"));
    m.def("invariant_C", &invariant_C, py::arg("constants"), py::arg("chart"));
    m.def("invariant_C_direct", &invariant_C_direct, py::arg("chart"),
          py::arg("state"), py::arg("omega"));
    m.def("motion_constants", &motion_constants, py::arg("chart"), py::arg("particle"),
          py::arg("field"), py::arg("state"));
    m.def("constants_from_integrals", &constants_from_integrals, py::arg("chart"),
          py::arg("epsilon"), py::arg("omega"), py::arg("I"), py::arg("A"));

    // dynamics
    py::class_<Accel>(m, "Accel")
        .def_readonly("ar", &Accel::ar)
        .def_readonly("aphi", &Accel::aphi)
        .def_readonly("az", &Accel::az);

    py::class_<FirstOrderRates>(m, "FirstOrderRates")
        .def_readonly("vz_sq", &FirstOrderRates::vz_sq)
        .def_readonly("vr_sq", &FirstOrderRates::vr_sq)
        .def_readonly("vphi", &FirstOrderRates::vphi);

    py::enum_<HaltReason>(m, "HaltReason")
        .value("NONE", HaltReason::None)
        .value("DOMAIN_EXIT", HaltReason::DomainExit)
        .value("SINGULARITY", HaltReason::Singularity)
        .value("NON_FINITE", HaltReason::NonFinite);

    py::class_<DriftReport>(m, "DriftReport")
        .def_readonly("epsilon", &DriftReport::epsilon)
        .def_readonly("I", &DriftReport::I)
        .def_readonly("A", &DriftReport::A)
        .def_readonly("C", &DriftReport::C)
        .def_readonly("omega", &DriftReport::omega)
        .def("worst", &DriftReport::worst);

    py::class_<Sample>(m, "Sample")
        .def_readonly("state", &Sample::state)
        .def_readonly("constants", &Sample::constants);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("samples", &Trajectory::samples)
        .def_readonly("step", &Trajectory::step)
        .def_readonly("method", &Trajectory::method)
        .def_readonly("halt", &Trajectory::halt)
        .def_readonly("halt_message", &Trajectory::halt_message)
        .def_readonly("drift", &Trajectory::drift)
        .def("completed", &Trajectory::completed)
        .def("times", [](const Trajectory& t) {
            return column(t, [](const Sample& s) { return s.state.t; });
        })
        .def("r", [](const Trajectory& t) {
            return column(t, [](const Sample& s) { return s.state.r; });
        })
        .def("phi", [](const Trajectory& t) {
            return column(t, [](const Sample& s) { return s.state.phi; });
        })
        .def("z", [](const Trajectory& t) {
            return column(t, [](const Sample& s) { return s.state.z; });
        })
        .def("vr", [](const Trajectory& t) {
            return column(t, [](const Sample& s) { return s.state.vr; });
        })
        .def("vphi", [](const Trajectory& t) {
            return column(t, [](const Sample& s) { return s.state.vphi; });
        })
        .def("vz", [](const Trajectory& t) {
            return column(t, [](const Sample& s) { return s.state.vz; });
        });

    m.def("accelerations", &accelerations, py::arg("chart"), py::arg("state"),
          py::arg("omega"));
    m.def("first_order_rates", &first_order_rates, py::arg("constants"),
          py::arg("chart"), py::arg("r"), py::arg("z"));
    m.def("integrate", &integrate, py::arg("chart"), py::arg("particle"),
          py::arg("field"), py::arg("initial"), py::arg("h"), py::arg("T"),
          py::call_guard<py::gil_scoped_release>());
    m.def("drift_report", &drift_report, py::arg("trajectory"));

    // analytic
    py::enum_<ZRegimeKind>(m, "ZRegimeKind")
        .value("CROSSING", ZRegimeKind::Crossing)
        .value("REFLECTED", ZRegimeKind::Reflected)
        .value("MARGINAL", ZRegimeKind::Marginal);

    py::class_<ZRegime>(m, "ZRegime")
        .def_readonly("kind", &ZRegime::kind)
        .def_readonly("z_plus", &ZRegime::z_plus)
        .def_readonly("z_minus", &ZRegime::z_minus);

    py::enum_<OrbitClass>(m, "OrbitClass")
        .value("BOUNDED_CIRCLE", OrbitClass::BoundedCircle)
        .value("MARGINAL_HOROCYCLIC", OrbitClass::MarginalHorocyclic)
        .value("UNBOUNDED", OrbitClass::Unbounded);

    py::class_<ZClosedForm>(m, "ZClosedForm")
        .def_readonly("z", &ZClosedForm::z)
        .def_readonly("vz", &ZClosedForm::vz);

    py::class_<PhiClosedForm>(m, "PhiClosedForm")
        .def_readonly("phi", &PhiClosedForm::phi)
        .def_readonly("vphi", &PhiClosedForm::vphi);

    py::class_<RadialTurningPoints>(m, "RadialTurningPoints")
        .def_readonly("r_min", &RadialTurningPoints::r_min)
        .def_readonly("r_max", &RadialTurningPoints::r_max)
        .def_readonly("unbounded", &RadialTurningPoints::unbounded);

    py::class_<ZReference>(m, "ZReference")
        .def_readonly("t0", &ZReference::t0)
        .def_readonly("sign", &ZReference::sign);

    m.def("z_closed_form", &z_closed_form, py::arg("constants"), py::arg("chart"),
          py::arg("t"), py::arg("t0"), py::arg("sign"));
    m.def("forbidden_region", &forbidden_region, py::arg("constants"),
          py::arg("chart"));
    m.def("orbit_residual", &orbit_residual, py::arg("chart"), py::arg("r"),
          py::arg("phi"), py::arg("constants"), py::arg("phi0"));
    m.def("orbit_residual_normalized", &orbit_residual_normalized, py::arg("chart"),
          py::arg("r"), py::arg("phi"), py::arg("constants"), py::arg("phi0"));
    m.def("circle_params", &circle_params, py::arg("constants"), py::arg("chart"));
    m.def("onaxis_constants", &onaxis_constants, py::arg("chart"), py::arg("omega"),
          py::arg("r0"));
    m.def("phi_closed_form_onaxis", &phi_closed_form_onaxis, py::arg("constants"),
          py::arg("chart"), py::arg("r0"), py::arg("t"), py::arg("t0"),
          py::arg("phi0"));
    m.def("onaxis_vphi", &onaxis_vphi, py::arg("chart"), py::arg("omega"),
          py::arg("r0"), py::arg("z"));
    m.def("radial_turning_points", &radial_turning_points, py::arg("constants"),
          py::arg("chart"));
    m.def("quadrature_phi_of_r", &quadrature_phi_of_r, py::arg("constants"),
          py::arg("chart"), py::arg("r_from"), py::arg("r_to"), py::arg("phi_from"));
    m.def("quadrature_r_of_z", &quadrature_r_of_z, py::arg("constants"),
          py::arg("chart"), py::arg("z_from"), py::arg("z_to"), py::arg("r_from"),
          py::arg("vr_sign") = 1);
    m.def("classify_orbit", &classify_orbit, py::arg("constants"), py::arg("chart"));
    m.def("euclidean_reference", &euclidean_reference, py::arg("chart"),
          py::arg("particle"), py::arg("field"), py::arg("initial"), py::arg("t"));
    m.def("phi0_from_state", &phi0_from_state, py::arg("constants"), py::arg("chart"),
          py::arg("state"));
    m.def("fit_z_reference", &fit_z_reference, py::arg("constants"), py::arg("chart"),
          py::arg("state"));

    m.attr("__version__") = "0.1.0";
}
