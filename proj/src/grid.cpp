#include "wavelab/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "wavelab/common.hpp"
#include "wavelab/parallel.hpp"

namespace wavelab {

RadialGrid build_grid(double r_max, int nr, double cfl_factor, double coeff_bound)
{
    if (!(r_max > 0.0))
        throw std::invalid_argument("build_grid: r_max must be positive");
    if (nr < 16)
        throw std::invalid_argument("build_grid: nr must be at least 16");
    if (!(cfl_factor > 0.0 && cfl_factor < 1.0))
        throw std::invalid_argument("build_grid: cfl_factor must lie in (0, 1)");
    if (coeff_bound < 0.0)
        throw std::invalid_argument("build_grid: coeff_bound must be nonnegative");
    if (coeff_bound > 0.5)
        throw CoefficientBoundError("build_grid: coeff_bound exceeds 1/2");

    RadialGrid g;
    g.r_max = r_max;
    g.nr = nr;
    g.dr = r_max / nr;
    g.cfl_factor = cfl_factor;
    g.coeff_bound = coeff_bound;
    g.dt = cfl_factor * g.dr / std::sqrt(1.0 + coeff_bound);
    return g;
}

std::pair<std::vector<double>, std::vector<double>>
radial_derivatives(std::span<const double> v, const RadialGrid& grid)
{
    const int n = grid.nodes();
    if (static_cast<int>(v.size()) != n)
        throw std::invalid_argument("radial_derivatives: array length must be nr+1");
    const double dr = grid.dr;
    std::vector<double> d1(n), d2(n);

    par::parallel_for(n - 2, [&](std::int64_t k) {
        const int i = static_cast<int>(k) + 1;
        d1[i] = (v[i + 1] - v[i - 1]) / (2.0 * dr);
        d2[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (dr * dr);
    });
    d1[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * dr);
    d1[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * dr);
    d2[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / (dr * dr);
    d2[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / (dr * dr);
    return {std::move(d1), std::move(d2)};
}

std::vector<double> hessian_frobenius_sq(std::span<const double> phi_r,
                                         std::span<const double> phi_rr,
                                         const RadialGrid& grid)
{
    const int n = grid.nodes();
    if (static_cast<int>(phi_r.size()) != n || static_cast<int>(phi_rr.size()) != n)
        throw std::invalid_argument("hessian_frobenius_sq: array length must be nr+1");
    std::vector<double> out(n);
    out[0] = 3.0 * phi_rr[0] * phi_rr[0];
    par::parallel_for(n - 1, [&](std::int64_t k) {
        const int i = static_cast<int>(k) + 1;
        const double q = phi_r[i] / grid.radius(i);
        out[i] = phi_rr[i] * phi_rr[i] + 2.0 * q * q;
    });
    return out;
}

std::vector<double> phi_from_u(std::span<const double> u, const RadialGrid& grid)
{
    const int n = grid.nodes();
    if (static_cast<int>(u.size()) != n)
        throw std::invalid_argument("phi_from_u: array length must be nr+1");
    std::vector<double> phi(n);
    phi[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * grid.dr);
    par::parallel_for(n - 1, [&](std::int64_t k) {
        const int i = static_cast<int>(k) + 1;
        phi[i] = u[i] / grid.radius(i);
    });
    return phi;
}

namespace {

// phi is even in r; central stencils interior, evenness at the origin, the
// second derivative at r = 0 from u_rrr(0)/3 with a one-sided stencil on u.
void even_field_derivatives(std::span<const double> field, std::span<const double> u,
                            const RadialGrid& grid, std::vector<double>& d1,
                            std::vector<double>& d2)
{
    const int n = grid.nodes();
    const double dr = grid.dr;
    d1.assign(n, 0.0);
    d2.assign(n, 0.0);
    par::parallel_for(n - 2, [&](std::int64_t k) {
        const int i = static_cast<int>(k) + 1;
        d1[i] = (field[i + 1] - field[i - 1]) / (2.0 * dr);
        d2[i] = (field[i + 1] - 2.0 * field[i] + field[i - 1]) / (dr * dr);
    });
    d1[0] = 0.0;
    const double u3 =
        (-2.5 * u[0] + 9.0 * u[1] - 12.0 * u[2] + 7.0 * u[3] - 1.5 * u[4]) / (dr * dr * dr);
    d2[0] = u3 / 3.0;
    d1[n - 1] = (3.0 * field[n - 1] - 4.0 * field[n - 2] + field[n - 3]) / (2.0 * dr);
    d2[n - 1] =
        (2.0 * field[n - 1] - 5.0 * field[n - 2] + 4.0 * field[n - 3] - field[n - 4]) / (dr * dr);
}

} // namespace

LevelFields make_level_fields(const FieldSnapshot& snap, const RadialGrid& grid)
{
    LevelFields lf;
    lf.t = snap.t;
    lf.phi = phi_from_u(snap.u, grid);
    lf.phi_t = phi_from_u(snap.u_t, grid);

    std::vector<double> d2;
    even_field_derivatives(lf.phi, snap.u, grid, lf.phi_r, d2);
    lf.phi_rr = std::move(d2);

    std::vector<double> tr2;
    even_field_derivatives(lf.phi_t, snap.u_t, grid, lf.phi_tr, tr2);

    if (!snap.u_tt.empty())
        lf.phi_tt = phi_from_u(snap.u_tt, grid);
    else
        lf.phi_tt.assign(grid.nodes(), 0.0);
    return lf;
}

} // namespace wavelab
