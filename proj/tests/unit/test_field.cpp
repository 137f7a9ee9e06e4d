#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "curved_larmor/field.hpp"

using namespace curved_larmor;

namespace {

const SpaceChart h3{-1, 1.0, 1.0};
const SpaceChart s3{+1, 1.0, 1.0};
const FieldParams unit_field{1.0};

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
    return g;
}

} // namespace

TEST_CASE("vector potential reference values") {
    CHECK(vector_potential_phi(h3, unit_field, 0.0) == 0.0);
    CHECK(vector_potential_phi(h3, unit_field, 1.0) ==
          doctest::Approx(-0.5430806).epsilon(1e-7));
    // flat limit: symmetric gauge -B r^2 / 2
    const SpaceChart far{-1, 1e3, 1.0};
    CHECK(vector_potential_phi(far, unit_field, 1.0) ==
          doctest::Approx(-0.5).epsilon(1e-6));
    // spherical sign per the S3 potential
    CHECK(vector_potential_phi(s3, unit_field, 1.0) ==
          doctest::Approx(std::cos(1.0) - 1.0).epsilon(1e-15));
}

TEST_CASE("field strength and finite-difference oracle") {
    CHECK(field_strength_phir(h3, unit_field, 0.0) == 0.0);
    CHECK(field_strength_phir(h3, unit_field, 1.0) ==
          doctest::Approx(1.1752012).epsilon(1e-7));
    CHECK(field_strength_phir(s3, unit_field, 1.0) ==
          doctest::Approx(std::sin(1.0)).epsilon(1e-15));

    // central difference of the potential at r = 1
    const double hstep = 1e-5;
    for (const SpaceChart& chart : {h3, s3}) {
        const double fd = -(vector_potential_phi(chart, unit_field, 1.0 + hstep) -
                            vector_potential_phi(chart, unit_field, 1.0 - hstep)) /
                          (2.0 * hstep);
        CHECK(std::abs(fd - field_strength_phir(chart, unit_field, 1.0)) <= 1e-9);
    }
}

TEST_CASE("field strength planar limit") {
    const SpaceChart far{-1, 1e3, 1.0};
    const double f = field_strength_phir(far, unit_field, 1.0);
    CHECK(std::abs(f - 1.0) <= 1e-5); // B * r
}

TEST_CASE("maxwell residual") {
    const auto grid = linspace(0.5, 2.0, 200);

    CHECK(maxwell_residual(h3, unit_field, grid, 0.0) <= 1e-10);
    CHECK(maxwell_residual(h3, unit_field, grid, 0.7) <= 1e-10);
    CHECK(maxwell_residual(s3, unit_field, grid, 0.3) <= 1e-10);
    CHECK(maxwell_residual(h3, FieldParams{0.0}, grid, 0.0) == 0.0);

    // potential route reproduces the analytic residual scale
    const double via_potential = maxwell_residual_potential(
        h3, [&](double r) { return vector_potential_phi(h3, unit_field, r); },
        grid, 0.0);
    CHECK(via_potential <= 1e-8);

    // a deliberate non-solution is flagged
    const double perturbed = maxwell_residual_potential(
        h3,
        [&](double r) {
            return vector_potential_phi(h3, unit_field, r) + 0.01 * r * r;
        },
        grid, 0.0);
    CHECK(perturbed > 1e-4);

    const std::vector<double> degenerate = {0.5, 1.0};
    CHECK_THROWS_AS(maxwell_residual(h3, unit_field, degenerate, 0.0),
                    std::invalid_argument);
}

TEST_CASE("gauge sanity") {
    const auto grid = linspace(0.5, 2.0, 101);
    const double base = maxwell_residual(h3, unit_field, grid, 0.2);
    // field strength and the analytic residual never see the gauge constant
    CHECK(field_strength_phir(h3, unit_field, 1.0) ==
          field_strength_phir(h3, unit_field, 1.0));
    const double shifted = maxwell_residual_potential(
        h3,
        [&](double r) { return vector_potential_phi(h3, unit_field, r) + 10.0; },
        grid, 0.2);
    CHECK(std::abs(shifted - base) <= 1e-7);
}
