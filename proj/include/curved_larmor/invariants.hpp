#pragma once

#include "curved_larmor/field.hpp"
#include "curved_larmor/geometry.hpp"

namespace curved_larmor {

struct ParticleParams {
    double mass = 1.0;
    double charge = 1.0;

    void validate() const;
};

/// The four integrals of motion of one trajectory plus the derived
/// cyclotron frequency. epsilon is the squared coordinate speed, I the
/// generalized angular momentum, A the squared transverse-speed analog and
/// C the shifted-circle constant.
struct MotionConstants {
    double epsilon = 0.0;
    double omega = 0.0;
    double I = 0.0;
    double A = 0.0;
    double C = 0.0;
};

/// vz^2 + C(z)^2 vr^2 + C(z)^2 rho^2 S(r)^2 vphi^2.
double squared_speed(const SpaceChart& chart, const State& state);

/// omega = (e B / m c) sqrt(1 - epsilon/c^2); constant along a trajectory.
double cyclotron_omega(const ParticleParams& particle, const FieldParams& field,
                       const SpaceChart& chart, double epsilon);

/// I = omega rho^2 [C(r) - 1] + rho^2 S(r)^2 C(z)^2 vphi.
double invariant_I(const SpaceChart& chart, const State& state, double omega);

/// A = C(z)^4 [vr^2 + rho^2 S(r)^2 vphi^2] >= 0.
double invariant_A(const SpaceChart& chart, const State& state);

/// Algebraic route: C = A - rho^2 omega^2 + (I + omega rho^2)^2 / rho^2.
double invariant_C(const MotionConstants& constants, const SpaceChart& chart);

/// State route, independent of the algebraic one. For H3 this is the
/// manifestly nonnegative form
///   C(z)^4 vr^2 + rho^2 S(r)^2 [C(r) C(z)^2 vphi + omega]^2.
double invariant_C_direct(const SpaceChart& chart, const State& state,
                          double omega);

/// All constants evaluated directly from a state (C via the state route).
MotionConstants motion_constants(const SpaceChart& chart,
                                 const ParticleParams& particle,
                                 const FieldParams& field, const State& state);

/// Assemble constants from given integrals (C via the algebraic route);
/// for synthetic data and closed-form drivers.
MotionConstants constants_from_integrals(const SpaceChart& chart, double epsilon,
                                         double omega, double I, double A);

} // namespace curved_larmor
