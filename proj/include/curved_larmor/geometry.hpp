#pragma once

#include <cmath>
#include <numbers>

namespace curved_larmor {

/// Constant-curvature chart shared by every module.
///
/// kappa = -1 selects the hyperbolic space H3, kappa = +1 the spherical
/// space S3. The flat limit is reached by letting rho grow, never by
/// kappa = 0.
struct SpaceChart {
    int kappa = -1;      // -1: H3, +1: S3
    double rho = 1.0;    // curvature radius, > 0
    double c = 1.0;      // speed of light, > 0

    void validate() const;
};

/// Cylindrical-chart state: coordinates plus coordinate velocities
/// (dr/dt, dphi/dt, dz/dt) at time t. phi is stored unwrapped so swept
/// angles accumulate; use phi_wrapped() for the principal value.
struct State {
    double t = 0.0;
    double r = 0.0;
    double phi = 0.0;
    double z = 0.0;
    double vr = 0.0;
    double vphi = 0.0;
    double vz = 0.0;

    double phi_wrapped() const;
};

/// Ambient 4D coordinates of the quadric model.
/// H3: u0^2 - u1^2 - u2^2 - u3^2 = rho^2 with u0 > 0.
/// S3: u0^2 + u1^2 + u2^2 + u3^2 = rho^2.
struct Embedded {
    double u0 = 0.0;
    double u1 = 0.0;
    double u2 = 0.0;
    double u3 = 0.0;
};

/// Curvature-sign trigonometry pair: S = sinh(x/rho) or sin(x/rho),
/// C = cosh(x/rho) or cos(x/rho). Satisfies C^2 + kappa*S^2 = 1.
struct KTrig {
    double s = 0.0;
    double c = 1.0;
};

KTrig ktrig(const SpaceChart& chart, double x);

/// C(x) - 1 without cancellation near x = 0
/// (2*sinh^2(x/2rho) for H3, -2*sin^2(x/2rho) for S3).
double ktrig_cm1(const SpaceChart& chart, double x);

bool state_in_domain(const SpaceChart& chart, const State& state);
void require_in_domain(const SpaceChart& chart, const State& state);

Embedded embed(const SpaceChart& chart, const State& state);

/// (u0^2 - kappa-signed sum - rho^2) / rho^2; zero for a point on the quadric.
double embedding_residual(const SpaceChart& chart, const Embedded& u);

/// Geodesic circle in the (r, phi) plane: radius r0 about a center at
/// distance R from the origin, in direction phi0.
struct OrbitGeometry {
    double r0 = 0.0;
    double R = 0.0;
    double phi0 = 0.0;
};

/// C(R)C(r) - C(r0) - S(R)S(r)cos(phi - phi0); zero iff (r, phi) lies on
/// the circle.
double circle_residual(const SpaceChart& chart, double r, double phi,
                       const OrbitGeometry& geom);

} // namespace curved_larmor
