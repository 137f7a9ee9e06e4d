#include "curved_larmor/field.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace curved_larmor {

double vector_potential_phi(const SpaceChart& chart, const FieldParams& field,
                            double r) {
    const double rho2 = chart.rho * chart.rho;
    return chart.kappa * rho2 * field.B * ktrig_cm1(chart, r);
}

double field_strength_phir(const SpaceChart& chart, const FieldParams& field,
                           double r) {
    return chart.rho * field.B * ktrig(chart, r).s;
}

namespace {

// Divergence residual of F^{r phi} for field-strength samples f[i] = F_phi_r(r[i]).
double divergence_residual(const SpaceChart& chart,
                           std::span<const double> r_grid, double z,
                           std::span<const double> f_phir) {
    if (r_grid.size() < 3)
        throw std::invalid_argument("maxwell_residual: grid needs at least 3 points");
    const double rho = chart.rho;
    const auto [sz, cz] = ktrig(chart, z);
    (void)sz;
    const double cz2 = cz * cz;

    const std::size_t n = r_grid.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double sr = ktrig(chart, r_grid[i]).s;
        if (!(sr > 0.0))
            throw std::invalid_argument("maxwell_residual: grid must satisfy S(r) > 0");
        // sqrt(-g) * F^{r phi} with F_{r phi} = -F_{phi r};
        // metric inverse gives F^{r phi} = F_{r phi} / (rho^2 C(z)^4 S(r)^2).
        d[i] = -f_phir[i] / (rho * rho * cz2 * sr);
    }
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double sr = ktrig(chart, r_grid[i]).s;
        const double sqrtg = cz2 * sr;
        const double res =
            (d[i + 1] - d[i - 1]) / ((r_grid[i + 1] - r_grid[i - 1]) * sqrtg);
        worst = std::max(worst, std::abs(res));
    }
    return worst;
}

} // namespace

double maxwell_residual(const SpaceChart& chart, const FieldParams& field,
                        std::span<const double> r_grid, double z) {
    std::vector<double> f(r_grid.size());
    for (std::size_t i = 0; i < r_grid.size(); ++i)
        f[i] = field_strength_phir(chart, field, r_grid[i]);
    return divergence_residual(chart, r_grid, z, f);
}

double maxwell_residual_potential(const SpaceChart& chart,
                                  const std::function<double(double)>& a_phi,
                                  std::span<const double> r_grid, double z) {
    if (r_grid.size() < 3)
        throw std::invalid_argument("maxwell_residual: grid needs at least 3 points");
    // Five-point stencil derivative of the potential, h scaled to the grid.
    const double h = 1e-4 * chart.rho;
    std::vector<double> f(r_grid.size());
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        const double r = r_grid[i];
        const double d = (a_phi(r - 2 * h) - 8 * a_phi(r - h) + 8 * a_phi(r + h) -
                          a_phi(r + 2 * h)) /
                         (12 * h);
        f[i] = -d;
    }
    return divergence_residual(chart, r_grid, z, f);
}

} // namespace curved_larmor
