#include "curved_larmor/dynamics.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace curved_larmor {

namespace {

constexpr double kAxisGuardFactor = 1e-9;

using StateVec = std::array<double, 6>; // r, phi, z, vr, vphi, vz

StateVec to_vec(const State& s) {
    return {s.r, s.phi, s.z, s.vr, s.vphi, s.vz};
}

State to_state(const StateVec& y, double t) {
    State s;
    s.t = t;
    s.r = y[0];
    s.phi = y[1];
    s.z = y[2];
    s.vr = y[3];
    s.vphi = y[4];
    s.vz = y[5];
    return s;
}

StateVec derivatives(const SpaceChart& chart, const StateVec& y, double omega) {
    State s = to_state(y, 0.0);
    const Accel a = accelerations(chart, s, omega);
    return {s.vr, s.vphi, s.vz, a.ar, a.aphi, a.az};
}

bool finite(const StateVec& y) {
    for (double v : y)
        if (!std::isfinite(v)) return false;
    return true;
}

double rel_excursion(double value, double reference) {
    return std::abs(value - reference) / std::max(std::abs(reference), 1e-30);
}

} // namespace

Accel accelerations(const SpaceChart& chart, const State& state, double omega) {
    const double rho = chart.rho;
    const double k = chart.kappa;
    const auto [sr, cr] = ktrig(chart, state.r);
    const auto [sz, cz] = ktrig(chart, state.z);
    const double cz2 = cz * cz;
    const double tz = sz / cz;

    Accel a;
    a.az = -(k / rho) * cz * sz *
           (state.vr * state.vr + rho * rho * sr * sr * state.vphi * state.vphi);

    const double guard = kAxisGuardFactor * rho;
    if (state.r < guard) {
        if (state.vphi != 0.0)
            throw std::domain_error(
                "accelerations: coordinate singularity at r = 0 with vphi != 0");
        // On-axis with vphi = 0: the azimuthal equation is trivial by
        // continuity and the magnetic term of ar vanishes with S(r).
        a.ar = (2.0 * k / rho) * tz * state.vz * state.vr;
        a.aphi = 0.0;
        return a;
    }

    a.ar = (2.0 * k / rho) * tz * state.vz * state.vr +
           rho * sr * (cr * state.vphi - k * omega / cz2) * state.vphi;
    a.aphi = -(2.0 / rho) * (cr / sr) * state.vr * state.vphi +
             (2.0 * k / rho) * tz * state.vz * state.vphi +
             k * omega * state.vr / (rho * sr * cz2);
    return a;
}

FirstOrderRates first_order_rates(const MotionConstants& constants,
                                  const SpaceChart& chart, double r, double z) {
    const double rho = chart.rho;
    const auto [sr, cr] = ktrig(chart, r);
    (void)cr;
    if (sr == 0.0)
        throw std::domain_error("first_order_rates: S(r) = 0 divides the azimuthal equations");
    const double cz = ktrig(chart, z).c;
    const double cz2 = cz * cz;
    const double cz4 = cz2 * cz2;

    const double n = constants.I - constants.omega * rho * rho * ktrig_cm1(chart, r);
    FirstOrderRates rates;
    rates.vz_sq = constants.epsilon - constants.A / cz2;
    rates.vr_sq = constants.A / cz4 - n * n / (cz4 * rho * rho * sr * sr);
    rates.vphi = n / (rho * rho * sr * sr * cz2);
    return rates;
}

const char* to_string(HaltReason reason) {
    switch (reason) {
        case HaltReason::None: return "none";
        case HaltReason::DomainExit: return "domain_exit";
        case HaltReason::Singularity: return "singularity";
        case HaltReason::NonFinite: return "non_finite";
    }
    return "unknown";
}

double DriftReport::worst() const {
    return std::max({epsilon, I, A, C, omega});
}

Trajectory integrate(const SpaceChart& chart, const ParticleParams& particle,
                     const FieldParams& field, const State& initial, double h,
                     double T) {
    chart.validate();
    particle.validate();
    if (!(h > 0.0) || !(T > 0.0))
        throw std::invalid_argument("integrate: h and T must be positive");
    require_in_domain(chart, initial);

    const auto t_start = std::chrono::steady_clock::now();

    Trajectory traj;
    traj.chart = chart;
    traj.particle = particle;
    traj.field = field;
    traj.step = h;

    const double eps0 = squared_speed(chart, initial);
    const double omega0 = cyclotron_omega(particle, field, chart, eps0);
    const double c2 = chart.c * chart.c;

    auto snapshot = [&](const State& s) {
        MotionConstants k;
        k.epsilon = squared_speed(chart, s);
        // omega reconstructed from the sampled epsilon; a diagnostic, the
        // equations of motion always use omega0.
        k.omega = (k.epsilon < c2)
                      ? omega0 * std::sqrt((c2 - k.epsilon) / (c2 - eps0))
                      : std::numeric_limits<double>::quiet_NaN();
        k.I = invariant_I(chart, s, omega0);
        k.A = invariant_A(chart, s);
        k.C = invariant_C_direct(chart, s, omega0);
        return Sample{s, k};
    };

    traj.samples.push_back(snapshot(initial));

    const double guard = kAxisGuardFactor * chart.rho;
    const long n_steps = std::lround(T / h);
    StateVec y = to_vec(initial);
    double t = initial.t;

    for (long i = 0; i < n_steps; ++i) {
        StateVec k1, k2, k3, k4;
        try {
            k1 = derivatives(chart, y, omega0);
            StateVec tmp;
            for (int j = 0; j < 6; ++j) tmp[j] = y[j] + 0.5 * h * k1[j];
            k2 = derivatives(chart, tmp, omega0);
            for (int j = 0; j < 6; ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
            k3 = derivatives(chart, tmp, omega0);
            for (int j = 0; j < 6; ++j) tmp[j] = y[j] + h * k3[j];
            k4 = derivatives(chart, tmp, omega0);
        } catch (const std::domain_error& e) {
            traj.halt = HaltReason::Singularity;
            traj.halt_message = e.what();
            break;
        }

        StateVec next;
        for (int j = 0; j < 6; ++j)
            next[j] = y[j] + h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);

        if (!finite(next)) {
            traj.halt = HaltReason::NonFinite;
            traj.halt_message = "non-finite state component";
            break;
        }
        const double t_next = initial.t + (i + 1) * h;
        State s = to_state(next, t_next);
        if (s.r < 0.0 || (s.r < guard && s.vphi != 0.0)) {
            traj.halt = HaltReason::Singularity;
            traj.halt_message = "trajectory approached the r = 0 coordinate axis";
            break;
        }
        if (!state_in_domain(chart, s)) {
            traj.halt = HaltReason::DomainExit;
            traj.halt_message = "trajectory left the chart domain";
            break;
        }
        y = next;
        t = t_next;
        traj.samples.push_back(snapshot(s));
    }
    (void)t;

    traj.drift = drift_report(traj);
    traj.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t_start)
                       .count();
    return traj;
}

DriftReport drift_report(const Trajectory& traj) {
    if (traj.samples.empty())
        throw std::invalid_argument("drift_report: empty trajectory");
    const MotionConstants& k0 = traj.samples.front().constants;
    DriftReport d;
    for (const Sample& s : traj.samples) {
        d.epsilon = std::max(d.epsilon, rel_excursion(s.constants.epsilon, k0.epsilon));
        d.I = std::max(d.I, rel_excursion(s.constants.I, k0.I));
        d.A = std::max(d.A, rel_excursion(s.constants.A, k0.A));
        d.C = std::max(d.C, rel_excursion(s.constants.C, k0.C));
        d.omega = std::max(d.omega, rel_excursion(s.constants.omega, k0.omega));
    }
    return d;
}

} // namespace curved_larmor
