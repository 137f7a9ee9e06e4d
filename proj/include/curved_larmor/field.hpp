#pragma once

#include <functional>
#include <span>

#include "curved_larmor/geometry.hpp"

namespace curved_larmor {

/// Uniform-analog magnetic field along the z axis; B carries the sign.
struct FieldParams {
    double B = 1.0;
};

/// A_phi = kappa * rho^2 B [C(r) - 1]:
///   H3: -rho^2 B [cosh(r/rho) - 1],  S3: +rho^2 B [cos(r/rho) - 1].
double vector_potential_phi(const SpaceChart& chart, const FieldParams& field,
                            double r);

/// F_phi_r = -d A_phi / dr = rho B S(r) (A_r = 0).
double field_strength_phir(const SpaceChart& chart, const FieldParams& field,
                           double r);

/// Max |(1/sqrt(-g)) d_r (sqrt(-g) F^{r phi})| over the interior grid points,
/// using the analytic field strength. Zero up to discretization for the
/// uniform-analog potential.
double maxwell_residual(const SpaceChart& chart, const FieldParams& field,
                        std::span<const double> r_grid, double z);

/// Same residual for an arbitrary potential A_phi(r); the field strength is
/// obtained by five-point numerical differentiation. Used to detect
/// non-solutions.
double maxwell_residual_potential(const SpaceChart& chart,
                                  const std::function<double(double)>& a_phi,
                                  std::span<const double> r_grid, double z);

} // namespace curved_larmor
