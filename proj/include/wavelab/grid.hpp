#ifndef WAVELAB_GRID_HPP
#define WAVELAB_GRID_HPP

#include <span>
#include <utility>
#include <vector>

namespace wavelab {

// Uniform radial mesh for the reduced problem in u = r*phi. Nodes r_i = i*dr,
// i = 0..nr; node 0 is a Dirichlet point (u = 0). The time step obeys
// dt <= cfl * dr / sqrt(1 + coeff_bound), the worst case of d^2_t phi = (1-h) Lap phi
// over |h| <= coeff_bound.
struct RadialGrid {
    double r_max = 0.0;
    int nr = 0;
    double dr = 0.0;
    double dt = 0.0;
    double cfl_factor = 0.0;
    double coeff_bound = 0.0;

    int nodes() const { return nr + 1; }
    double radius(int i) const { return i * dr; }
};

RadialGrid build_grid(double r_max, int nr, double cfl_factor, double coeff_bound);

// First and second radial derivatives of nodal values; central stencils in the
// interior, second-order one-sided at both ends. Exact on quadratics.
std::pair<std::vector<double>, std::vector<double>>
radial_derivatives(std::span<const double> values, const RadialGrid& grid);

// |Hess phi|_F^2 = phi_rr^2 + 2 (phi_r/r)^2 for radial phi; the r -> 0 limit is
// 3 phi_rr(0)^2.
std::vector<double> hessian_frobenius_sq(std::span<const double> phi_r,
                                         std::span<const double> phi_rr,
                                         const RadialGrid& grid);

// One time level of the reduced variables. u = r*phi and u[0] = 0 exactly;
// u_tt is the PDE right-hand side at this level (filled by the producer).
struct FieldSnapshot {
    double t = 0.0;
    std::vector<double> u, u_t, u_tt;
};

// Snapshot with every derived field materialized once, shared by all sinks.
struct LevelFields {
    double t = 0.0;
    std::vector<double> phi, phi_t, phi_r, phi_rr, phi_tr, phi_tt;
};

// phi = u/r with the l'Hopital value at the origin; radial derivative fields
// from stencils on the (even, smooth) phi data; origin second derivative from a
// one-sided stencil on u (phi_rr(0) = u_rrr(0)/3).
std::vector<double> phi_from_u(std::span<const double> u, const RadialGrid& grid);
LevelFields make_level_fields(const FieldSnapshot& snap, const RadialGrid& grid);

} // namespace wavelab

#endif
