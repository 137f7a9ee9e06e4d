#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "curved_larmor/dynamics.hpp"

using namespace curved_larmor;

namespace {

const SpaceChart h3{-1, 1.0, 1.0};
const SpaceChart s3{+1, 1.0, 1.0};
const ParticleParams unit_particle{1.0, 1.0};
const FieldParams unit_field{1.0};

State make_state(double r, double z, double vr, double vphi, double vz,
                 double phi = 0.0) {
    State s;
    s.r = r;
    s.phi = phi;
    s.z = z;
    s.vr = vr;
    s.vphi = vphi;
    s.vz = vz;
    return s;
}

// one RK4 step, test-local so the conservation oracle stays independent of
// the integrate() bookkeeping
State rk4_step(const SpaceChart& chart, const State& s, double omega, double h) {
    auto f = [&](const State& u) {
        const Accel a = accelerations(chart, u, omega);
        return std::array<double, 6>{u.vr, u.vphi, u.vz, a.ar, a.aphi, a.az};
    };
    auto advance = [&](const State& u, const std::array<double, 6>& k, double s_) {
        State v = u;
        v.r += s_ * k[0];
        v.phi += s_ * k[1];
        v.z += s_ * k[2];
        v.vr += s_ * k[3];
        v.vphi += s_ * k[4];
        v.vz += s_ * k[5];
        return v;
    };
    const auto k1 = f(s);
    const auto k2 = f(advance(s, k1, h / 2));
    const auto k3 = f(advance(s, k2, h / 2));
    const auto k4 = f(advance(s, k3, h));
    State out = s;
    out.t += h;
    out.r += h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
    out.phi += h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
    out.z += h / 6 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2]);
    out.vr += h / 6 * (k1[3] + 2 * k2[3] + 2 * k3[3] + k4[3]);
    out.vphi += h / 6 * (k1[4] + 2 * k2[4] + 2 * k3[4] + k4[4]);
    out.vz += h / 6 * (k1[5] + 2 * k2[5] + 2 * k3[5] + k4[5]);
    return out;
}

} // namespace

TEST_CASE("accelerations vanish for radial motion at z = 0") {
    const State s = make_state(0.9, 0.0, 0.2, 0.0, 0.0);
    const Accel a = accelerations(h3, s, 1.0);
    CHECK(a.ar == 0.0);
    CHECK(a.az == 0.0);
}

TEST_CASE("accelerations for circular start at z = 0") {
    const double r = 0.7, vphi = 0.25, omega = 1.3;
    const State s = make_state(r, 0.0, 0.0, vphi, 0.0);
    const Accel a = accelerations(h3, s, omega);
    const double expected =
        std::sinh(r) * (std::cosh(r) * vphi + omega) * vphi;
    CHECK(a.ar == doctest::Approx(expected).epsilon(1e-14));
    CHECK(a.az == 0.0);
}

TEST_CASE("conservation oracle certifies the force terms") {
    // difference the invariants across a micro RK4 step in both directions
    for (const SpaceChart& chart : {h3, s3}) {
        const State s = make_state(0.8, 0.2, 0.05, 0.1, 0.07);
        const double eps = squared_speed(chart, s);
        const double omega = cyclotron_omega(unit_particle, unit_field, chart, eps);
        const double h = 1e-3;
        const State fwd = rk4_step(chart, s, omega, h);
        const State bwd = rk4_step(chart, s, omega, -h);
        auto rate = [&](double a, double b) { return std::abs(a - b) / (2 * h); };
        CHECK(rate(squared_speed(chart, fwd), squared_speed(chart, bwd)) <= 1e-9);
        CHECK(rate(invariant_I(chart, fwd, omega), invariant_I(chart, bwd, omega)) <=
              1e-9);
        CHECK(rate(invariant_A(chart, fwd), invariant_A(chart, bwd)) <= 1e-9);
    }
}

TEST_CASE("axis behavior") {
    const State spinning = make_state(0.0, 0.1, 0.0, 0.3, 0.0);
    CHECK_THROWS_AS(accelerations(h3, spinning, 1.0), std::domain_error);
    const State through = make_state(0.0, 0.1, 0.0, 0.0, 0.4);
    const Accel a = accelerations(h3, through, 1.0);
    CHECK(a.aphi == 0.0);
}

TEST_CASE("first order rates") {
    // A = 0: uniform z motion at every z
    MotionConstants k = constants_from_integrals(h3, 0.36, 1.0, 0.0, 0.0);
    CHECK(first_order_rates(k, h3, 0.5, 0.3).vz_sq ==
          doctest::Approx(0.36).epsilon(1e-14));
    CHECK(first_order_rates(k, h3, 0.5, -2.0).vz_sq ==
          doctest::Approx(0.36).epsilon(1e-14));

    // turning point of the z equation: cosh^2(z) = A / eps
    k = constants_from_integrals(h3, 0.25, 1.0, 0.1, 0.5);
    const double z_turn = std::acosh(std::sqrt(k.A / k.epsilon));
    CHECK(std::abs(first_order_rates(k, h3, 0.5, z_turn).vz_sq) <= 1e-14);

    // on-axis data reproduces the cylinder angular velocity at z = 0
    const double r0 = 0.8813735870195430;
    const double A = std::tanh(r0) * std::tanh(r0);
    const double I = 1.0 / std::cosh(r0) - 1.0;
    k = constants_from_integrals(h3, 0.75, 1.0, I, A);
    CHECK(first_order_rates(k, h3, r0, 0.0).vphi ==
          doctest::Approx(-1.0 / std::cosh(r0)).epsilon(1e-12));

    CHECK_THROWS_AS(first_order_rates(k, h3, 0.0, 0.0), std::domain_error);
}

TEST_CASE("A = 0 motion is exactly linear in z") {
    const State s = make_state(0.3, 0.0, 0.0, 0.0, 0.5);
    const Trajectory traj = integrate(h3, unit_particle, unit_field, s, 1e-3, 4.0);
    REQUIRE(traj.completed());
    CHECK(traj.samples.size() == 4001);
    CHECK(std::abs(traj.final().state.z - 2.0) <= 1e-12);
    CHECK(traj.drift.worst() <= 1e-14);
}

TEST_CASE("on-axis cylinder keeps r = r0") {
    // fix the state for omega = 1 first, then derive the B that makes the
    // cyclotron frequency come out at exactly 1
    const double r0 = 0.8813735870195430;
    State s = make_state(r0, 0.0, 0.0, -1.0 / std::cosh(r0), 0.5);
    const double eps = squared_speed(h3, s);
    const FieldParams field{1.0 / std::sqrt(1.0 - eps)};
    const Trajectory traj = integrate(h3, unit_particle, field, s, 1e-3, 20.0);
    REQUIRE(traj.completed());
    CHECK(traj.initial().constants.omega == doctest::Approx(1.0).epsilon(1e-14));
    double max_dev = 0.0;
    for (const Sample& sample : traj.samples)
        max_dev = std::max(max_dev, std::abs(sample.state.r - r0));
    CHECK(max_dev <= 1e-8);
}

TEST_CASE("fourth-order convergence") {
    const State s = make_state(0.7, 0.1, 0.1, 0.15, 0.2);
    auto final_state = [&](double h) {
        return integrate(h3, unit_particle, unit_field, s, h, 2.0).final().state;
    };
    const State coarse = final_state(0.02);
    const State medium = final_state(0.01);
    const State fine = final_state(0.0025); // reference, 16x smaller error
    auto err = [&](const State& a) {
        return std::sqrt(std::pow(a.r - fine.r, 2) + std::pow(a.z - fine.z, 2) +
                         std::pow(a.phi - fine.phi, 2));
    };
    const double ratio = err(coarse) / err(medium);
    CHECK(ratio == doctest::Approx(16.0).epsilon(0.25));
}

TEST_CASE("conservation over a long run") {
    const State s = make_state(0.7, 0.1, 0.1, 0.15, 0.2);
    const Trajectory traj = integrate(h3, unit_particle, unit_field, s, 1e-3, 20.0);
    REQUIRE(traj.completed());
    CHECK(traj.drift.epsilon <= 1e-8);
    CHECK(traj.drift.I <= 1e-8);
    CHECK(traj.drift.A <= 1e-8);
    CHECK(traj.drift.C <= 1e-8);
    CHECK(traj.drift.omega <= 1e-8);
}

TEST_CASE("first-order rates hold along an integrated trajectory") {
    const State s = make_state(0.7, 0.1, 0.1, 0.15, 0.2);
    const Trajectory traj = integrate(h3, unit_particle, unit_field, s, 1e-3, 10.0);
    REQUIRE(traj.completed());
    const MotionConstants k0 = traj.initial().constants;
    double worst = 0.0;
    for (const Sample& sample : traj.samples) {
        const FirstOrderRates rates =
            first_order_rates(k0, h3, sample.state.r, sample.state.z);
        const double vz2 = sample.state.vz * sample.state.vz;
        const double vr2 = sample.state.vr * sample.state.vr;
        worst = std::max(worst, std::abs(rates.vz_sq - vz2) /
                                    std::max(std::abs(rates.vz_sq), 1e-12));
        worst = std::max(worst, std::abs(rates.vr_sq - vr2) /
                                    std::max(std::abs(rates.vr_sq), 1e-3));
        worst = std::max(worst, std::abs(rates.vphi - sample.state.vphi) /
                                    std::max(std::abs(rates.vphi), 1e-12));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("time reversal") {
    const State s = make_state(0.7, 0.1, 0.1, 0.15, 0.2);
    const Trajectory fwd = integrate(h3, unit_particle, unit_field, s, 1e-3, 5.0);
    REQUIRE(fwd.completed());
    // magnetic time reversal: flip velocities and the charge sign
    State back = fwd.final().state;
    back.vr = -back.vr;
    back.vphi = -back.vphi;
    back.vz = -back.vz;
    const ParticleParams mirror{1.0, -1.0};
    const Trajectory rev = integrate(h3, mirror, unit_field, back, 1e-3, 5.0);
    REQUIRE(rev.completed());
    const State end = rev.final().state;
    CHECK(std::abs(end.r - s.r) <= 1e-7);
    CHECK(std::abs(end.phi - s.phi) <= 1e-7);
    CHECK(std::abs(end.z - s.z) <= 1e-7);
    CHECK(std::abs(end.vr + s.vr) <= 1e-7);
    CHECK(std::abs(end.vphi + s.vphi) <= 1e-7);
    CHECK(std::abs(end.vz + s.vz) <= 1e-7);
}

TEST_CASE("spherical chart conserves the substituted integrals") {
    const State s = make_state(0.8, 0.25, 0.11, 0.23, 0.31);
    const Trajectory traj = integrate(s3, unit_particle, unit_field, s, 1e-3, 5.0);
    REQUIRE(traj.completed());
    CHECK(traj.drift.epsilon <= 1e-8);
    CHECK(traj.drift.I <= 1e-8);
    CHECK(traj.drift.A <= 1e-8);
}

TEST_CASE("spherical domain exit halts with a partial trajectory") {
    // pure axial motion runs into the degenerate z boundary
    const State s = make_state(0.5, 0.0, 0.0, 0.0, 0.5);
    const Trajectory traj = integrate(s3, unit_particle, unit_field, s, 1e-3, 10.0);
    CHECK(traj.halt == HaltReason::DomainExit);
    CHECK(traj.samples.size() > 1);
    CHECK(traj.samples.size() < 10001);
}

TEST_CASE("drift report metadata is self-consistent") {
    const State s = make_state(0.7, 0.1, 0.1, 0.15, 0.2);
    const Trajectory traj = integrate(h3, unit_particle, unit_field, s, 1e-2, 1.0);
    const DriftReport recomputed = drift_report(traj);
    CHECK(traj.drift.epsilon == recomputed.epsilon);
    CHECK(traj.drift.I == recomputed.I);
    CHECK(traj.drift.A == recomputed.A);
    CHECK(traj.drift.C == recomputed.C);

    Trajectory single = traj;
    single.samples.resize(1);
    const DriftReport d = drift_report(single);
    CHECK(d.worst() == 0.0);

    // samples strictly increasing in t
    for (std::size_t i = 1; i < traj.samples.size(); ++i)
        CHECK(traj.samples[i].state.t > traj.samples[i - 1].state.t);
}

TEST_CASE("integrate input contracts") {
    const State s = make_state(0.5, 0.0, 0.0, 0.0, 0.1);
    CHECK_THROWS_AS(integrate(h3, unit_particle, unit_field, s, -1e-3, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate(h3, unit_particle, unit_field, s, 1e-3, 0.0),
                    std::invalid_argument);
    State fast = s;
    fast.vz = 1.5; // superluminal
    CHECK_THROWS_AS(integrate(h3, unit_particle, unit_field, fast, 1e-3, 1.0),
                    std::domain_error);
}
