#include "curved_larmor/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace curved_larmor {

namespace {

constexpr double kMarginalTol = 1e-12;

void require_h3(const SpaceChart& chart, const char* what) {
    if (chart.kappa >= 0)
        throw std::domain_error(std::string(what) +
                                ": closed forms exist only on the hyperbolic chart");
}

bool marginal(double epsilon, double A) {
    return std::abs(epsilon - A) <= kMarginalTol * std::max(std::abs(epsilon), std::abs(A));
}

// w(r) as a quadratic a x^2 + b x + c in x = cosh(r/rho).
struct RadialQuadratic {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    // roots kept only when meaningful for the shape at hand
    double x_lo = 1.0;
    double x_hi = 1.0;
    double x_neg = 0.0; // negative companion root (unbounded shape)
    OrbitClass shape = OrbitClass::BoundedCircle;
};

RadialQuadratic radial_quadratic(const MotionConstants& k, const SpaceChart& chart) {
    const double rho2 = chart.rho * chart.rho;
    const double p = k.I + k.omega * rho2;
    RadialQuadratic q;
    q.a = k.A * rho2 - k.omega * k.omega * rho2 * rho2;
    q.b = 2.0 * k.omega * rho2 * p;
    q.c = -(k.A * rho2 + p * p);
    q.shape = classify_orbit(k, chart);

    if (q.shape == OrbitClass::MarginalHorocyclic) {
        if (q.b == 0.0)
            throw std::domain_error("radial quadratic degenerates: omega (I + omega rho^2) = 0");
        q.x_lo = -q.c / q.b;
        q.x_lo = std::max(q.x_lo, 1.0);
        return q;
    }

    const double disc = q.b * q.b - 4.0 * q.a * q.c;
    const double disc_scale = q.b * q.b + std::abs(4.0 * q.a * q.c);
    if (disc <= kMarginalTol * disc_scale) {
        if (disc < -1e-9 * disc_scale)
            throw std::domain_error("radial quadratic has no real roots: invalid constants");
        // double root (C = 0 cylinder)
        q.x_lo = q.x_hi = std::max(1.0, -q.b / (2.0 * q.a));
        return q;
    }
    const double sq = std::sqrt(disc);
    const double qq = -0.5 * (q.b + std::copysign(sq, q.b));
    double r1 = qq / q.a;
    double r2 = q.c / qq;
    if (r1 > r2) std::swap(r1, r2);
    if (q.shape == OrbitClass::BoundedCircle) {
        if (r2 < 1.0)
            throw std::domain_error("radial motion region empty: invalid constants");
        q.x_lo = std::max(r1, 1.0);
        q.x_hi = r2;
    } else {
        q.x_neg = r1;
        q.x_lo = std::max(r2, 1.0);
    }
    return q;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Adaptive Simpson quadrature.
inline double simpson_segment(double a, double fa, double b, double fb,
                              double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson_impl(const F& f, double a, double fa, double b, double fb,
                             double m, double fm, double whole, double tol,
                             int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_segment(a, fa, m, fm, flm);
    const double right = simpson_segment(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_impl(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_impl(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    const double whole = simpson_segment(a, fa, b, fb, fm);
    return adaptive_simpson_impl(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

// Cumulative z-side integral of the orbit relation,
// H(z) = int dz / (cosh(z/rho) sqrt(eps cosh^2(z/rho) - A)),
// in closed form; evaluated cancellation-free in both tails.
double z_side_cumulative(const MotionConstants& k, const SpaceChart& chart,
                         double z) {
    const double rho = chart.rho;
    const double u = std::sinh(z / rho);
    const double g = k.epsilon * (1.0 + u * u) - k.A;
    if (!(g > 0.0))
        throw std::domain_error("z leg enters the forbidden region");
    const double s = std::sqrt(k.epsilon * u * u + (k.epsilon - k.A));
    const double sa = std::sqrt(k.A);
    double num, den;
    if (u >= 0.0) {
        num = s + u * sa;
        den = (k.epsilon - k.A) * (u * u + 1.0) / num;
    } else {
        den = s - u * sa;
        num = (k.epsilon - k.A) * (u * u + 1.0) / den;
    }
    return rho / (2.0 * sa) * std::log(std::abs(num / den));
}

} // namespace

const char* to_string(ZRegimeKind kind) {
    switch (kind) {
        case ZRegimeKind::Crossing: return "crossing";
        case ZRegimeKind::Reflected: return "reflected";
        case ZRegimeKind::Marginal: return "marginal";
    }
    return "unknown";
}

const char* to_string(OrbitClass cls) {
    switch (cls) {
        case OrbitClass::BoundedCircle: return "bounded_circle";
        case OrbitClass::MarginalHorocyclic: return "marginal_horocyclic";
        case OrbitClass::Unbounded: return "unbounded";
    }
    return "unknown";
}

ZClosedForm z_closed_form(const MotionConstants& constants,
                          const SpaceChart& chart, double t, double t0,
                          int sign) {
    require_h3(chart, "z_closed_form");
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("z_closed_form: sign must be +1 or -1");
    const double eps = constants.epsilon;
    const double A = constants.A;
    if (!(eps > 0.0))
        throw std::invalid_argument("z_closed_form: epsilon must be positive (z constant otherwise)");
    if (marginal(eps, A))
        throw std::domain_error("z_closed_form: marginal case epsilon = A has no closed form here");

    const double rho = chart.rho;
    const double tau = std::sqrt(eps) * (t - t0) / rho;
    ZClosedForm out;
    if (eps > A) {
        const double q = std::sqrt(1.0 - A / eps);
        const double shz = sign * q * std::sinh(tau);
        const double chz = std::hypot(1.0, shz);
        out.z = rho * std::asinh(shz);
        out.vz = sign * std::sqrt(eps - A) * std::cosh(tau) / chz;
    } else {
        const double q = std::sqrt(A / eps - 1.0);
        const double shz = sign * q * std::cosh(tau);
        const double chz = std::hypot(1.0, shz);
        out.z = rho * std::asinh(shz);
        out.vz = sign * std::sqrt(A - eps) * std::sinh(tau) / chz;
    }
    return out;
}

ZRegime forbidden_region(const MotionConstants& constants,
                         const SpaceChart& chart) {
    require_h3(chart, "forbidden_region");
    const double eps = constants.epsilon;
    const double A = constants.A;
    if (!(eps > 0.0))
        throw std::invalid_argument("forbidden_region: epsilon must be positive");
    ZRegime regime;
    if (eps > A * (1.0 + kMarginalTol)) {
        regime.kind = ZRegimeKind::Crossing;
    } else if (eps < A * (1.0 - kMarginalTol)) {
        regime.kind = ZRegimeKind::Reflected;
        regime.z_plus = chart.rho * std::asinh(std::sqrt(A / eps - 1.0));
        regime.z_minus = -regime.z_plus;
    } else {
        regime.kind = ZRegimeKind::Marginal;
    }
    return regime;
}

double orbit_residual(const SpaceChart& chart, double r, double phi,
                      const MotionConstants& constants, double phi0) {
    require_h3(chart, "orbit_residual");
    const double rho2 = chart.rho * chart.rho;
    double C = constants.C;
    if (C < 0.0) {
        if (C < -1e-12 * (std::abs(constants.A) + rho2 * constants.omega * constants.omega))
            throw std::domain_error("orbit_residual: C must be nonnegative");
        C = 0.0;
    }
    const auto [sr, cr] = ktrig(chart, r);
    return (constants.I + constants.omega * rho2) * cr - constants.omega * rho2 -
           std::sqrt(C) * chart.rho * sr * std::cos(phi - phi0);
}

double orbit_residual_normalized(const SpaceChart& chart, double r, double phi,
                                 const MotionConstants& constants, double phi0) {
    const double rho2 = chart.rho * chart.rho;
    const auto [sr, cr] = ktrig(chart, r);
    const double scale =
        std::abs((constants.I + constants.omega * rho2) * cr) +
        std::abs(constants.omega) * rho2 +
        std::sqrt(std::max(constants.C, 0.0)) * chart.rho * std::abs(sr);
    return orbit_residual(chart, r, phi, constants, phi0) / std::max(scale, 1e-300);
}

OrbitGeometry circle_params(const MotionConstants& constants,
                            const SpaceChart& chart) {
    require_h3(chart, "circle_params");
    if (constants.omega == 0.0)
        throw std::invalid_argument("circle_params: omega must be nonzero");
    const double rho = chart.rho;
    const double w2r2 = constants.omega * constants.omega * rho * rho;
    const double q = 1.0 - constants.A / w2r2;
    if (!(q > 0.0))
        throw std::domain_error("circle_params: unbounded orbit (A >= omega^2 rho^2)");
    const double sq = std::sqrt(q);
    const double ch_r0 = 1.0 / sq;
    const double ch_R = (constants.I + constants.omega * rho * rho) /
                        (constants.omega * rho * rho * sq);
    if (ch_R < 1.0 - 1e-9)
        throw std::domain_error("circle_params: cosh(R/rho) < 1 (C < 0 data)");
    OrbitGeometry geom;
    geom.r0 = rho * std::acosh(std::max(1.0, ch_r0));
    geom.R = rho * std::acosh(std::max(1.0, ch_R));
    geom.phi0 = 0.0;
    return geom;
}

std::pair<double, double> onaxis_constants(const SpaceChart& chart, double omega,
                                           double r0) {
    require_h3(chart, "onaxis_constants");
    if (r0 < 0.0)
        throw std::invalid_argument("onaxis_constants: r0 must be nonnegative");
    const double rho = chart.rho;
    const double th = std::tanh(r0 / rho);
    const double A = omega * omega * rho * rho * th * th;
    const double I = omega * rho * rho * (1.0 / std::cosh(r0 / rho) - 1.0);
    return {A, I};
}

PhiClosedForm phi_closed_form_onaxis(const MotionConstants& constants,
                                     const SpaceChart& chart, double r0,
                                     double t, double t0, double phi0) {
    require_h3(chart, "phi_closed_form_onaxis");
    const double eps = constants.epsilon;
    const double A = constants.A;
    if (!(A > 0.0))
        throw std::invalid_argument("phi_closed_form_onaxis: A = 0 motion has no rotation");
    if (!(eps > 0.0))
        throw std::invalid_argument("phi_closed_form_onaxis: epsilon must be positive");
    if (marginal(eps, A))
        throw std::domain_error("phi_closed_form_onaxis: marginal case epsilon = A");

    const double rho = chart.rho;
    const double ch_r0 = std::cosh(r0 / rho);
    const double tau = std::sqrt(eps) * (t - t0) / rho;
    const double sh2 = std::sinh(tau) * std::sinh(tau);
    const double pre = -constants.omega * rho / (ch_r0 * std::sqrt(A));

    PhiClosedForm out;
    if (eps > A) {
        out.phi = phi0 + pre * std::atanh(std::sqrt(A / eps) * std::tanh(tau));
        out.vphi = -constants.omega * eps / (ch_r0 * ((eps - A) * sh2 + eps));
    } else {
        out.phi = phi0 + pre * std::atanh(std::sqrt(eps / A) * std::tanh(tau));
        out.vphi = -constants.omega * eps / (ch_r0 * ((A - eps) * sh2 + A));
    }
    return out;
}

double onaxis_vphi(const SpaceChart& chart, double omega, double r0, double z) {
    require_h3(chart, "onaxis_vphi");
    const double chz = std::cosh(z / chart.rho);
    return -omega / (std::cosh(r0 / chart.rho) * chz * chz);
}

RadialTurningPoints radial_turning_points(const MotionConstants& constants,
                                          const SpaceChart& chart) {
    require_h3(chart, "radial_turning_points");
    if (!(constants.A > 0.0))
        throw std::invalid_argument("radial_turning_points: A = 0 has no radial structure");
    const RadialQuadratic q = radial_quadratic(constants, chart);
    RadialTurningPoints tp;
    tp.r_min = chart.rho * std::acosh(std::max(1.0, q.x_lo));
    if (q.shape == OrbitClass::BoundedCircle) {
        tp.r_max = chart.rho * std::acosh(std::max(1.0, q.x_hi));
    } else {
        tp.r_max = std::numeric_limits<double>::infinity();
        tp.unbounded = true;
    }
    return tp;
}

double quadrature_phi_of_r(const MotionConstants& constants,
                           const SpaceChart& chart, double r_from, double r_to,
                           double phi_from) {
    require_h3(chart, "quadrature_phi_of_r");
    if (!(constants.A > 0.0))
        throw std::invalid_argument("quadrature_phi_of_r: A = 0 has no radial legs");
    const double rho = chart.rho;
    const double rho2 = rho * rho;
    const RadialQuadratic q = radial_quadratic(constants, chart);

    const double x_from = std::cosh(r_from / rho);
    const double x_to = std::cosh(r_to / rho);
    const double slack = 1e-9 * (1.0 + std::abs(q.x_hi));
    if (q.shape == OrbitClass::BoundedCircle) {
        if (x_from < q.x_lo - slack || x_from > q.x_hi + slack ||
            x_to < q.x_lo - slack || x_to > q.x_hi + slack)
            throw std::domain_error("quadrature_phi_of_r: interval leaves the allowed radial band");
    } else {
        if (x_from < q.x_lo - slack || x_to < q.x_lo - slack)
            throw std::domain_error("quadrature_phi_of_r: interval below the inner turning point");
    }

    // dphi = N(x) dx / ((x^2-1) sqrt(w));  N(x) = I - omega rho^2 (x - 1).
    // The substitution below absorbs the 1/sqrt(w) endpoint singularity.
    const double i_scale = std::abs(constants.omega) * rho2 + std::abs(constants.I);
    const bool axis_reaches = std::abs(constants.I) <= 1e-14 * i_scale;
    auto n_over_x2m1 = [&](double x) {
        const double xm1 = x - 1.0;
        if (axis_reaches)
            return -constants.omega * rho2 / (x + 1.0);
        return (constants.I - constants.omega * rho2 * xm1) / (xm1 * (x + 1.0));
    };

    double integral = 0.0;
    if (q.shape == OrbitClass::BoundedCircle) {
        const double width = q.x_hi - q.x_lo;
        if (width <= 0.0) return phi_from; // C = 0 cylinder: no radial leg
        const double sq = std::sqrt(-q.a);
        auto theta_of = [&](double x) {
            return std::asin(std::sqrt(clamp01((x - q.x_lo) / width)));
        };
        auto f = [&](double th) {
            const double s = std::sin(th);
            const double x = q.x_lo + width * s * s;
            return 2.0 * n_over_x2m1(x) / sq;
        };
        integral = adaptive_simpson(f, theta_of(x_from), theta_of(x_to), 1e-12);
    } else if (q.shape == OrbitClass::Unbounded) {
        const double span = q.x_lo - q.x_neg;
        const double sq = std::sqrt(q.a);
        auto psi_of = [&](double x) {
            return std::asinh(std::sqrt(std::max(0.0, (x - q.x_lo) / span)));
        };
        auto f = [&](double ps) {
            const double s = std::sinh(ps);
            const double x = q.x_lo + span * s * s;
            return 2.0 * n_over_x2m1(x) / sq;
        };
        integral = adaptive_simpson(f, psi_of(x_from), psi_of(x_to), 1e-12);
    } else {
        const double sq = std::sqrt(q.b);
        auto s_of = [&](double x) { return std::sqrt(std::max(0.0, x - q.x_lo)); };
        auto f = [&](double s) {
            const double x = q.x_lo + s * s;
            return 2.0 * n_over_x2m1(x) / sq;
        };
        integral = adaptive_simpson(f, s_of(x_from), s_of(x_to), 1e-12);
    }
    return phi_from + integral;
}

double quadrature_r_of_z(const MotionConstants& constants,
                         const SpaceChart& chart, double z_from, double z_to,
                         double r_from, int vr_sign) {
    require_h3(chart, "quadrature_r_of_z");
    if (!(constants.epsilon > 0.0))
        throw std::invalid_argument("quadrature_r_of_z: epsilon must be positive");
    const double rho = chart.rho;
    const double rho2 = rho * rho;

    const double c_scale = std::abs(constants.A) +
                           rho2 * constants.omega * constants.omega +
                           std::abs(constants.I) * std::abs(constants.omega);
    if (constants.A <= 0.0 || std::abs(constants.C) <= 1e-12 * c_scale)
        return r_from; // pure z motion or C = 0 cylinder: radius frozen

    // The leg must stay out of the forbidden z band; the cumulative integral
    // checks the endpoints, the midpoint check catches a crossing through 0.
    if (z_from * z_to < 0.0 && !(constants.epsilon > constants.A))
        throw std::domain_error("quadrature_r_of_z: z leg crosses the forbidden region");

    const double dH = std::abs(z_side_cumulative(constants, chart, z_to) -
                               z_side_cumulative(constants, chart, z_from));

    const RadialQuadratic q = radial_quadratic(constants, chart);
    const double x_from = std::cosh(r_from / rho);
    const double dir = (vr_sign >= 0) ? 1.0 : -1.0;

    double x_to = 0.0;
    if (q.shape == OrbitClass::BoundedCircle) {
        const double width = q.x_hi - q.x_lo;
        const double th0 =
            dir * std::asin(std::sqrt(clamp01((x_from - q.x_lo) / width)));
        const double th1 = th0 + std::sqrt(-q.a) / (2.0 * rho2) * dH;
        const double s = std::sin(th1);
        x_to = q.x_lo + width * s * s;
    } else if (q.shape == OrbitClass::Unbounded) {
        const double span = q.x_lo - q.x_neg;
        const double ps0 =
            dir * std::asinh(std::sqrt(std::max(0.0, (x_from - q.x_lo) / span)));
        const double ps1 = ps0 + std::sqrt(q.a) / (2.0 * rho2) * dH;
        const double s = std::sinh(ps1);
        x_to = q.x_lo + span * s * s;
    } else {
        const double s0 = dir * std::sqrt(std::max(0.0, x_from - q.x_lo));
        const double s1 = s0 + std::sqrt(q.b) / (2.0 * rho2) * dH;
        x_to = q.x_lo + s1 * s1;
    }
    return rho * std::acosh(std::max(1.0, x_to));
}

OrbitClass classify_orbit(const MotionConstants& constants,
                          const SpaceChart& chart) {
    require_h3(chart, "classify_orbit");
    if (constants.omega == 0.0)
        throw std::invalid_argument("classify_orbit: omega must be nonzero");
    const double bound = constants.omega * constants.omega * chart.rho * chart.rho;
    const double tol = kMarginalTol * std::max(bound, std::abs(constants.A));
    if (std::abs(constants.A - bound) <= tol) return OrbitClass::MarginalHorocyclic;
    return constants.A < bound ? OrbitClass::BoundedCircle : OrbitClass::Unbounded;
}

State euclidean_reference(const SpaceChart& chart, const ParticleParams& particle,
                          const FieldParams& field, const State& initial,
                          double t) {
    // Flat polar coordinates; only chart.c is used.
    const double cphi = std::cos(initial.phi);
    const double sphi = std::sin(initial.phi);
    const double x0 = initial.r * cphi;
    const double y0 = initial.r * sphi;
    const double vx0 = initial.vr * cphi - initial.r * sphi * initial.vphi;
    const double vy0 = initial.vr * sphi + initial.r * cphi * initial.vphi;

    const double eps = vx0 * vx0 + vy0 * vy0 + initial.vz * initial.vz;
    const double omega = cyclotron_omega(particle, field, chart, eps);

    const double dt = t - initial.t;
    double x, y, vx, vy;
    if (omega == 0.0) {
        x = x0 + vx0 * dt;
        y = y0 + vy0 * dt;
        vx = vx0;
        vy = vy0;
    } else {
        const double swt = std::sin(omega * dt);
        const double hw = std::sin(0.5 * omega * dt);
        const double cwt_m1 = -2.0 * hw * hw; // cos(omega dt) - 1, stable
        vx = vx0 * (cwt_m1 + 1.0) + vy0 * swt;
        vy = -vx0 * swt + vy0 * (cwt_m1 + 1.0);
        x = x0 + (vx0 * swt - vy0 * cwt_m1) / omega;
        y = y0 + (vy0 * swt + vx0 * cwt_m1) / omega;
    }

    State out;
    out.t = t;
    out.z = initial.z + initial.vz * dt;
    out.vz = initial.vz;
    out.r = std::hypot(x, y);
    out.phi = std::atan2(y, x);
    if (out.r > 1e-300) {
        out.vr = (x * vx + y * vy) / out.r;
        out.vphi = (x * vy - y * vx) / (out.r * out.r);
    }
    return out;
}

double phi0_from_state(const MotionConstants& constants, const SpaceChart& chart,
                       const State& state) {
    require_h3(chart, "phi0_from_state");
    const double rho = chart.rho;
    const double rho2 = rho * rho;
    const double c_scale = std::abs(constants.A) +
                           rho2 * constants.omega * constants.omega +
                           constants.I * constants.I / rho2;
    if (constants.C <= 1e-12 * c_scale)
        throw std::domain_error("phi0_from_state: phi0 undefined for C = 0");
    const auto [sr, cr] = ktrig(chart, state.r);
    if (!(sr > 0.0))
        throw std::domain_error("phi0_from_state: r = 0 is degenerate");
    const double sqc = std::sqrt(constants.C);
    double cosval = ((constants.I + constants.omega * rho2) * cr -
                     constants.omega * rho2) /
                    (sqc * rho * sr);
    if (std::abs(cosval) > 1.0 + 1e-9)
        throw std::domain_error("phi0_from_state: point violates the orbit equation");
    cosval = std::clamp(cosval, -1.0, 1.0);
    if (1.0 - std::abs(cosval) < 1e-12)
        throw std::domain_error("phi0_from_state: radial turning point is degenerate");

    const double delta = std::acos(cosval);
    // Two candidates; the orbit equation is stationary along the flow only
    // for the right one.
    auto residual_rate = [&](double phi0) {
        const double d = state.phi - phi0;
        return (constants.I + constants.omega * rho2) * sr * state.vr / rho -
               sqc * rho *
                   (cr * state.vr / rho * std::cos(d) - sr * std::sin(d) * state.vphi);
    };
    const double cand_a = state.phi - delta;
    const double cand_b = state.phi + delta;
    return std::abs(residual_rate(cand_a)) <= std::abs(residual_rate(cand_b))
               ? cand_a
               : cand_b;
}

ZReference fit_z_reference(const MotionConstants& constants,
                           const SpaceChart& chart, const State& state) {
    require_h3(chart, "fit_z_reference");
    const double eps = constants.epsilon;
    const double A = constants.A;
    if (!(eps > 0.0))
        throw std::invalid_argument("fit_z_reference: epsilon must be positive");
    if (marginal(eps, A))
        throw std::domain_error("fit_z_reference: marginal case epsilon = A");

    const double rho = chart.rho;
    const double shz = std::sinh(state.z / rho);
    ZReference ref;
    if (eps > A) {
        ref.sign = (state.vz >= 0.0) ? 1 : -1;
        const double arg = shz / (ref.sign * std::sqrt(1.0 - A / eps));
        ref.t0 = state.t - rho / std::sqrt(eps) * std::asinh(arg);
    } else {
        ref.sign = (state.z >= 0.0) ? 1 : -1;
        const double val =
            std::max(1.0, std::abs(shz) / std::sqrt(A / eps - 1.0));
        double tau = std::acosh(val);
        if (state.vz * ref.sign < 0.0) tau = -tau;
        ref.t0 = state.t - rho / std::sqrt(eps) * tau;
    }
    return ref;
}

} // namespace curved_larmor
