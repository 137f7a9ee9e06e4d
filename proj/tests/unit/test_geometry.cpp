#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "curved_larmor/geometry.hpp"

using namespace curved_larmor;

namespace {
const SpaceChart h3{-1, 1.0, 1.0};
const SpaceChart s3{+1, 1.0, 1.0};
} // namespace

TEST_CASE("ktrig reference values") {
    auto [s0, c0] = ktrig(h3, 0.0);
    CHECK(s0 == 0.0);
    CHECK(c0 == 1.0);

    auto [s1, c1] = ktrig(h3, 1.0);
    CHECK(s1 == doctest::Approx(1.1752012).epsilon(1e-7));
    CHECK(c1 == doctest::Approx(1.5430806).epsilon(1e-7));

    const SpaceChart s3_rho2{+1, 2.0, 1.0};
    auto [ss, cs] = ktrig(s3_rho2, std::numbers::pi);
    CHECK(ss == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(cs) < 1e-15);
}

TEST_CASE("ktrig identity C^2 + kappa S^2 = 1") {
    // Spherical chart: perfectly conditioned over the whole domain.
    for (int i = 0; i <= 1000; ++i) {
        const double x = -std::numbers::pi + 2.0 * std::numbers::pi * i / 1000.0;
        auto [s, c] = ktrig(s3, x);
        CHECK(std::abs(c * c + s * s - 1.0) <= 1e-14);
    }
    // Hyperbolic chart: the identity loses all precision in binary64 once
    // cosh^2 ~ 1/eps_mach (condition number 2 cosh^2), so assert it where it
    // is representable...
    for (int i = 0; i <= 1000; ++i) {
        const double x = -2.0 + 4.0 * i / 1000.0;
        auto [s, c] = ktrig(h3, x);
        CHECK(std::abs(c * c - s * s - 1.0) <= 1e-14);
    }
    // ...and check the exp-route reconstruction out to |x| = 20 rho, which
    // carries the same information without the cancellation (for each sign
    // of x, one of the two sums is well conditioned).
    for (int i = 0; i <= 400; ++i) {
        const double x = -20.0 + 40.0 * i / 400.0;
        auto [s, c] = ktrig(h3, x);
        CHECK(std::abs((c + s) - std::exp(x)) <= 1e-13 * c);
        CHECK(std::abs((c - s) - std::exp(-x)) <= 1e-13 * c);
    }
}

TEST_CASE("ktrig_cm1 is stable near zero") {
    CHECK(ktrig_cm1(h3, 0.0) == 0.0);
    CHECK(ktrig_cm1(h3, 1e-8) == doctest::Approx(5e-17).epsilon(1e-6));
    CHECK(ktrig_cm1(h3, 1.0) == doctest::Approx(std::cosh(1.0) - 1.0).epsilon(1e-15));
    CHECK(ktrig_cm1(s3, 1.0) == doctest::Approx(std::cos(1.0) - 1.0).epsilon(1e-15));
}

TEST_CASE("embed reference points") {
    State origin;
    const Embedded a = embed(h3, origin);
    CHECK(a.u0 == doctest::Approx(1.0));
    CHECK(a.u1 == 0.0);
    CHECK(a.u2 == 0.0);
    CHECK(a.u3 == 0.0);

    State radial;
    radial.r = 1.0;
    const Embedded b = embed(h3, radial);
    CHECK(b.u0 == doctest::Approx(1.5430806).epsilon(1e-7));
    CHECK(b.u1 == doctest::Approx(1.1752012).epsilon(1e-7));
    CHECK(b.u2 == 0.0);
    CHECK(b.u3 == 0.0);
    CHECK(b.u0 * b.u0 - b.u1 * b.u1 == doctest::Approx(1.0).epsilon(1e-12));

    State axial;
    axial.z = 1.0;
    const Embedded c = embed(h3, axial);
    CHECK(c.u0 == doctest::Approx(1.5430806).epsilon(1e-7));
    CHECK(c.u3 == doctest::Approx(1.1752012).epsilon(1e-7));
    CHECK(std::abs(embedding_residual(h3, c)) <= 1e-12);
}

TEST_CASE("embedding constraint over random states") {
    std::mt19937 gen(20260808);
    std::uniform_real_distribution<double> ur(0.0, 1.5);
    std::uniform_real_distribution<double> uz(-1.5, 1.5);
    std::uniform_real_distribution<double> uphi(0.0, 2.0 * std::numbers::pi);
    for (int i = 0; i < 10000; ++i) {
        State s;
        s.r = ur(gen);
        s.z = uz(gen);
        s.phi = uphi(gen);
        CHECK(std::abs(embedding_residual(h3, embed(h3, s))) <= 1e-12);
        CHECK(std::abs(embedding_residual(s3, embed(s3, s))) <= 1e-12);
    }
}

TEST_CASE("S3 chart domain") {
    State s;
    s.z = std::numbers::pi / 2.0; // metric degenerates here
    CHECK(!state_in_domain(s3, s));
    CHECK_THROWS_AS(embed(s3, s), std::domain_error);
    s.z = 1.2;
    CHECK(state_in_domain(s3, s));
    s.z = 0.0;
    s.r = 3.5; // > pi * rho
    CHECK(!state_in_domain(s3, s));
}

TEST_CASE("circle residual") {
    CHECK(circle_residual(h3, 0.0, 0.3, {0.0, 0.0, 0.0}) == doctest::Approx(0.0));
    // centered circle: any phi
    for (double phi : {0.0, 1.0, 4.0})
        CHECK(std::abs(circle_residual(h3, 0.7, phi, {0.7, 0.0, 0.0})) <= 1e-15);
    // circle through the origin: cosh(R) = cosh(r0) = sqrt(2), outermost
    // point at r = arcosh(3)
    const double a = 0.881373587019543;
    const double r = std::acosh(3.0);
    CHECK(std::abs(circle_residual(h3, r, 0.0, {a, a, 0.0})) <= 1e-12);
}

TEST_CASE("circle residual planar limit") {
    // residual * 2 rho^2 -> r^2 + R^2 - r0^2 - 2 r R cos(phi - phi0), with
    // the truncation error falling off as rho^-2. rho = 1e2 vs 1e3 keeps the
    // measurement above the roundoff floor of the scaled residual.
    const double r = 0.8, R = 1.1, r0 = 0.9, dphi = 0.6;
    const double planar = r * r + R * R - r0 * r0 - 2.0 * r * R * std::cos(dphi);
    auto scaled = [&](double rho) {
        const SpaceChart chart{-1, rho, 1.0};
        return circle_residual(chart, r, dphi, {r0, R, 0.0}) * 2.0 * rho * rho;
    };
    const double err2 = std::abs(scaled(1e2) - planar);
    const double err3 = std::abs(scaled(1e3) - planar);
    CHECK(err3 / err2 == doctest::Approx(1e-2).epsilon(0.5));
    CHECK(err3 <= 1e-5);
}

TEST_CASE("phi wrapping accessor") {
    State s;
    s.phi = 7.0 * std::numbers::pi; // unwrapped accumulation is allowed
    CHECK(s.phi == doctest::Approx(7.0 * std::numbers::pi));
    CHECK(s.phi_wrapped() == doctest::Approx(std::numbers::pi));
    s.phi = -0.5;
    CHECK(s.phi_wrapped() == doctest::Approx(2.0 * std::numbers::pi - 0.5));
}

TEST_CASE("chart validation") {
    CHECK_THROWS_AS((SpaceChart{0, 1.0, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((SpaceChart{-1, -1.0, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((SpaceChart{-1, 1.0, 0.0}).validate(), std::invalid_argument);
    CHECK_NOTHROW((SpaceChart{-1, 2.0, 3.0}).validate());
}
