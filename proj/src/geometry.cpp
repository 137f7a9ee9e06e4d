#include "curved_larmor/geometry.hpp"

#include <stdexcept>

namespace curved_larmor {

namespace {
constexpr double kPi = std::numbers::pi;
// S3 states with cos(z/rho) at or below this are rejected: the metric
// degenerates on the boundary z/rho = +-pi/2.
constexpr double kS3BoundaryMargin = 1e-12;
} // namespace

void SpaceChart::validate() const {
    if (kappa != -1 && kappa != 1)
        throw std::invalid_argument("SpaceChart: kappa must be -1 or +1");
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw std::invalid_argument("SpaceChart: rho must be positive and finite");
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("SpaceChart: c must be positive and finite");
}

double State::phi_wrapped() const {
    double w = std::fmod(phi, 2.0 * kPi);
    if (w < 0.0) w += 2.0 * kPi;
    return w;
}

KTrig ktrig(const SpaceChart& chart, double x) {
    const double a = x / chart.rho;
    if (chart.kappa < 0) return {std::sinh(a), std::cosh(a)};
    return {std::sin(a), std::cos(a)};
}

double ktrig_cm1(const SpaceChart& chart, double x) {
    const double half = 0.5 * x / chart.rho;
    if (chart.kappa < 0) {
        const double s = std::sinh(half);
        return 2.0 * s * s;
    }
    const double s = std::sin(half);
    return -2.0 * s * s;
}

bool state_in_domain(const SpaceChart& chart, const State& state) {
    if (!std::isfinite(state.r) || !std::isfinite(state.phi) ||
        !std::isfinite(state.z) || !std::isfinite(state.vr) ||
        !std::isfinite(state.vphi) || !std::isfinite(state.vz))
        return false;
    if (state.r < 0.0) return false;
    if (chart.kappa > 0) {
        if (state.r / chart.rho > kPi) return false;
        if (std::abs(state.z / chart.rho) >= kPi / 2.0) return false;
        if (std::cos(state.z / chart.rho) <= kS3BoundaryMargin) return false;
    }
    return true;
}

void require_in_domain(const SpaceChart& chart, const State& state) {
    if (!state_in_domain(chart, state))
        throw std::domain_error("state outside chart domain");
}

Embedded embed(const SpaceChart& chart, const State& state) {
    require_in_domain(chart, state);
    const auto [sr, cr] = ktrig(chart, state.r);
    const auto [sz, cz] = ktrig(chart, state.z);
    const double rho = chart.rho;
    Embedded u;
    u.u1 = rho * cz * sr * std::cos(state.phi);
    u.u2 = rho * cz * sr * std::sin(state.phi);
    u.u3 = rho * sz;
    u.u0 = rho * cz * cr;
    return u;
}

double embedding_residual(const SpaceChart& chart, const Embedded& u) {
    const double rho2 = chart.rho * chart.rho;
    double q;
    if (chart.kappa < 0)
        q = u.u0 * u.u0 - u.u1 * u.u1 - u.u2 * u.u2 - u.u3 * u.u3;
    else
        q = u.u0 * u.u0 + u.u1 * u.u1 + u.u2 * u.u2 + u.u3 * u.u3;
    return (q - rho2) / rho2;
}

double circle_residual(const SpaceChart& chart, double r, double phi,
                       const OrbitGeometry& geom) {
    const auto [sr, cr] = ktrig(chart, r);
    const auto [sR, cR] = ktrig(chart, geom.R);
    const auto [s0, c0] = ktrig(chart, geom.r0);
    (void)s0;
    return cR * cr - c0 - sR * sr * std::cos(phi - geom.phi0);
}

} // namespace curved_larmor
