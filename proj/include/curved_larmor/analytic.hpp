#pragma once

#include <utility>

#include "curved_larmor/dynamics.hpp"

namespace curved_larmor {

// Everything in this header is specific to the hyperbolic chart (kappa = -1)
// except euclidean_reference; the spherical chart has no closed-form theory
// here and the entry points reject it.

enum class ZRegimeKind { Crossing, Reflected, Marginal };

const char* to_string(ZRegimeKind kind);

/// Character of the z motion. For Reflected, the strip |sinh(z/rho)| <
/// sqrt(A/epsilon - 1) between z_minus and z_plus is forbidden.
struct ZRegime {
    ZRegimeKind kind = ZRegimeKind::Crossing;
    double z_plus = 0.0;
    double z_minus = 0.0;
};

enum class OrbitClass { BoundedCircle, MarginalHorocyclic, Unbounded };

const char* to_string(OrbitClass cls);

struct ZClosedForm {
    double z = 0.0;
    double vz = 0.0;
};

/// Closed-form z(t), vz(t).
/// epsilon > A: sinh(z/rho) = sign sqrt(1 - A/eps) sinh(sqrt(eps)(t-t0)/rho),
///   sign fixed for all t (z crosses 0 at t0 with speed sqrt(eps - A)).
/// epsilon < A: sinh(z/rho) = sign sqrt(A/eps - 1) cosh(sqrt(eps)(t-t0)/rho),
///   sign selects the branch above or below the forbidden strip; t0 is the
///   turning time (vz(t0) = 0).
ZClosedForm z_closed_form(const MotionConstants& constants,
                          const SpaceChart& chart, double t, double t0,
                          int sign);

ZRegime forbidden_region(const MotionConstants& constants,
                         const SpaceChart& chart);

/// LHS - RHS of the orbit equation
/// (I + omega rho^2) cosh(r/rho) - omega rho^2
///     = sqrt(C) rho sinh(r/rho) cos(phi - phi0);
/// zero along any trajectory with these constants.
double orbit_residual(const SpaceChart& chart, double r, double phi,
                      const MotionConstants& constants, double phi0);

/// Same residual divided by the largest term magnitude.
double orbit_residual_normalized(const SpaceChart& chart, double r, double phi,
                                 const MotionConstants& constants, double phi0);

/// Circle parameters of the bounded (r, phi) projection:
/// cosh(r0/rho) = 1/sqrt(1 - A/omega^2 rho^2),
/// cosh(R/rho) = (I + omega rho^2) / (omega rho^2 sqrt(1 - A/omega^2 rho^2)).
/// Throws unless A < omega^2 rho^2. phi0 is left at 0; recover it from a
/// trajectory point with phi0_from_state.
OrbitGeometry circle_params(const MotionConstants& constants,
                            const SpaceChart& chart);

/// On-axis (C = 0) integrals from the cylinder radius:
/// A = omega^2 rho^2 tanh^2(r0/rho), I = omega rho^2 [1/cosh(r0/rho) - 1].
std::pair<double, double> onaxis_constants(const SpaceChart& chart,
                                           double omega, double r0);

struct PhiClosedForm {
    double phi = 0.0;
    double vphi = 0.0;
};

/// Closed-form phi(t), vphi(t) for on-axis (C = 0) motion, both z regimes.
/// Requires A > 0 and epsilon != A.
PhiClosedForm phi_closed_form_onaxis(const MotionConstants& constants,
                                     const SpaceChart& chart, double r0,
                                     double t, double t0, double phi0);

/// Angular velocity on the cylinder: -omega / (cosh(r0/rho) cosh^2(z/rho)).
double onaxis_vphi(const SpaceChart& chart, double omega, double r0, double z);

struct RadialTurningPoints {
    double r_min = 0.0;
    double r_max = 0.0;
    bool unbounded = false; // r_max meaningless when set
};

/// Roots of w(r) = A rho^2 sinh^2(r/rho) - [I - omega rho^2 (cosh(r/rho)-1)]^2
/// via the quadratic in x = cosh(r/rho), keeping roots x >= 1.
RadialTurningPoints radial_turning_points(const MotionConstants& constants,
                                          const SpaceChart& chart);

/// Orbit azimuth transported from r_from to r_to along a monotone radial leg
/// (adaptive quadrature of the dphi/dr integral; turning-point endpoints are
/// regularized by an angular substitution and may be touched exactly).
double quadrature_phi_of_r(const MotionConstants& constants,
                           const SpaceChart& chart, double r_from, double r_to,
                           double phi_from);

/// Radius transported along a monotone z leg from (z_from, r_from) to z_to.
/// vr_sign is the sign of dr/dt at the start (+1 outward); radial turning
/// points inside the leg are folded automatically.
double quadrature_r_of_z(const MotionConstants& constants,
                         const SpaceChart& chart, double z_from, double z_to,
                         double r_from, int vr_sign);

OrbitClass classify_orbit(const MotionConstants& constants,
                          const SpaceChart& chart);

/// Flat-space helix with the same cyclotron frequency, for rho -> infinity
/// limit checks. The initial state is read as flat polar coordinates; only
/// chart.c enters.
State euclidean_reference(const SpaceChart& chart, const ParticleParams& particle,
                          const FieldParams& field, const State& initial,
                          double t);

/// phi0 of the orbit equation recovered from one trajectory point.
/// Undefined for C = 0 (any phi0 fits) and at radial turning points.
double phi0_from_state(const MotionConstants& constants, const SpaceChart& chart,
                       const State& state);

/// (t0, sign) of the closed-form z solution matching a trajectory point.
struct ZReference {
    double t0 = 0.0;
    int sign = 1;
};

ZReference fit_z_reference(const MotionConstants& constants,
                           const SpaceChart& chart, const State& state);

} // namespace curved_larmor
