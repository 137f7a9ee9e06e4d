#pragma once

#include <cmath>

#include "curved_larmor/analytic.hpp"

namespace curved_larmor::testing {

inline State make_state(double r, double z, double vr, double vphi, double vz,
                        double phi = 0.0, double t = 0.0) {
    State s;
    s.t = t;
    s.r = r;
    s.phi = phi;
    s.z = z;
    s.vr = vr;
    s.vphi = vphi;
    s.vz = vz;
    return s;
}

/// B that makes the trajectory's cyclotron frequency equal omega for this
/// initial state (the frequency depends on the state through epsilon).
inline FieldParams field_for_omega(const SpaceChart& chart,
                                   const ParticleParams& particle, const State& s,
                                   double omega) {
    const double eps = squared_speed(chart, s);
    return FieldParams{omega * particle.mass * chart.c /
                       (particle.charge * std::sqrt(1.0 - eps / (chart.c * chart.c)))};
}

/// On-axis (C = 0) state on the cylinder r = r0 with the given axial speed.
inline State onaxis_state(const SpaceChart& chart, double r0, double z0,
                          double vz, double omega, double phi = 0.0) {
    return make_state(r0, z0, 0.0, onaxis_vphi(chart, omega, r0, z0), vz, phi);
}

} // namespace curved_larmor::testing
