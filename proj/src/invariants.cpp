#include "curved_larmor/invariants.hpp"

#include <cmath>
#include <stdexcept>

namespace curved_larmor {

void ParticleParams::validate() const {
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw std::invalid_argument("ParticleParams: mass must be positive and finite");
    if (!std::isfinite(charge))
        throw std::invalid_argument("ParticleParams: charge must be finite");
}

double squared_speed(const SpaceChart& chart, const State& state) {
    const auto [sr, cr] = ktrig(chart, state.r);
    (void)cr;
    const double cz = ktrig(chart, state.z).c;
    const double cz2 = cz * cz;
    const double rho = chart.rho;
    return state.vz * state.vz + cz2 * state.vr * state.vr +
           cz2 * rho * rho * sr * sr * state.vphi * state.vphi;
}

double cyclotron_omega(const ParticleParams& particle, const FieldParams& field,
                       const SpaceChart& chart, double epsilon) {
    const double c2 = chart.c * chart.c;
    if (!(epsilon >= 0.0) || !(epsilon < c2))
        throw std::domain_error("cyclotron_omega: epsilon must satisfy 0 <= epsilon < c^2");
    return particle.charge * field.B / (particle.mass * chart.c) *
           std::sqrt(1.0 - epsilon / c2);
}

double invariant_I(const SpaceChart& chart, const State& state, double omega) {
    const auto [sr, cr] = ktrig(chart, state.r);
    (void)cr;
    const double cz = ktrig(chart, state.z).c;
    const double rho2 = chart.rho * chart.rho;
    return omega * rho2 * ktrig_cm1(chart, state.r) +
           rho2 * sr * sr * cz * cz * state.vphi;
}

double invariant_A(const SpaceChart& chart, const State& state) {
    const double sr = ktrig(chart, state.r).s;
    const double cz = ktrig(chart, state.z).c;
    const double cz4 = cz * cz * cz * cz;
    const double rho = chart.rho;
    return cz4 * (state.vr * state.vr +
                  rho * rho * sr * sr * state.vphi * state.vphi);
}

double invariant_C(const MotionConstants& constants, const SpaceChart& chart) {
    const double rho2 = chart.rho * chart.rho;
    const double p = constants.I + constants.omega * rho2;
    return constants.A - rho2 * constants.omega * constants.omega + p * p / rho2;
}

double invariant_C_direct(const SpaceChart& chart, const State& state,
                          double omega) {
    const auto [sr, cr] = ktrig(chart, state.r);
    const double cz = ktrig(chart, state.z).c;
    const double cz2 = cz * cz;
    const double cz4 = cz2 * cz2;
    const double rho = chart.rho;
    const double rho2 = rho * rho;
    if (chart.kappa < 0) {
        const double bracket = cr * cz2 * state.vphi + omega;
        return cz4 * state.vr * state.vr + rho2 * sr * sr * bracket * bracket;
    }
    // Spherical chart: same constant, but C(r)^2 = 1 - S(r)^2 spoils the
    // perfect square; expand (I + omega rho^2)^2 instead.
    const double v = state.vphi;
    return cz4 * state.vr * state.vr +
           rho2 * sr * sr *
               (cz4 * v * v * (1.0 + sr * sr) + 2.0 * omega * cr * cz2 * v -
                omega * omega);
}

MotionConstants motion_constants(const SpaceChart& chart,
                                 const ParticleParams& particle,
                                 const FieldParams& field, const State& state) {
    MotionConstants k;
    k.epsilon = squared_speed(chart, state);
    k.omega = cyclotron_omega(particle, field, chart, k.epsilon);
    k.I = invariant_I(chart, state, k.omega);
    k.A = invariant_A(chart, state);
    k.C = invariant_C_direct(chart, state, k.omega);
    return k;
}

MotionConstants constants_from_integrals(const SpaceChart& chart, double epsilon,
                                         double omega, double I, double A) {
    MotionConstants k;
    k.epsilon = epsilon;
    k.omega = omega;
    k.I = I;
    k.A = A;
    k.C = invariant_C(k, chart);
    return k;
}

} // namespace curved_larmor
